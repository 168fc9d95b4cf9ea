#include <iostream>
#include <string>
#include <vector>

#include "allrel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return allrel::run_cli(args, std::cout, std::cerr);
}
