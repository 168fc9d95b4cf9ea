#pragma once

#include <stdexcept>
#include <string>

namespace allrel {

// Base of every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (wrong shapes, empty sets, missing cells).
class InputError : public Error {
 public:
  using Error::Error;
};

// Parameter values outside their valid range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Data that is well-formed but cannot be learned from, e.g. a single class.
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Syntactic problems in an input file.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace allrel
