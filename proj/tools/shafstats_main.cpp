#include <iostream>
#include <string>
#include <vector>

#include "shafstats/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return shafstats::run_cli(args, std::cout, std::cerr);
}
