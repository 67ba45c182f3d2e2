#include <iostream>
#include <string>
#include <vector>

#include "hypersq/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return hypersq::cli::run(args, std::cout, std::cerr);
}
