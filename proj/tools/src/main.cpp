#include <iostream>
#include <string>
#include <vector>

#include "quiverks_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qks::cli::run(args, std::cout, std::cerr);
}
