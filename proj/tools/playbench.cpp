#include <iostream>
#include <string>
#include <vector>

#include "playbench/interface/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return playbench::run_cli(args, std::cout, std::cerr);
}
