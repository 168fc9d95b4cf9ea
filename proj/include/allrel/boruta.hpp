#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "allrel/dataset.hpp"
#include "allrel/forest.hpp"
#include "allrel/selection.hpp"

namespace allrel {

enum class Decision { Confirm, Reject, Undecided };

struct BorutaConfig {
  std::size_t max_runs = 100;
  double alpha = 0.01;
  ForestConfig forest;
  std::uint64_t seed = 0;

  void validate() const;
};

// Earliest iteration at which Boruta may decide an attribute.
inline constexpr std::size_t kFirstDecisionIteration = 3;

// hit[i] = importances[i] > shadow_max (strict).
std::vector<bool> hit_test(std::span<const double> importances, double shadow_max);

// Two one-sided exact binomial tests at p = 1/2 with a Bonferroni correction
// over `undecided` attributes.
Decision binomial_decision(std::size_t hits, std::size_t trials, double alpha, std::size_t undecided);

// The Boruta wrapper. Every non-shadow attribute of `data` is a candidate.
SelectionResult run_boruta(const Dataset& data, const BorutaConfig& config);

}  // namespace allrel
