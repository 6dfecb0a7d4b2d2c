#include <iostream>
#include <string>
#include <vector>

#include "dualspace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dualspace::run_command(args, std::cout, std::cerr);
}
