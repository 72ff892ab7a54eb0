#include <iostream>
#include <string>
#include <vector>

#include "tcrain_tools/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tcrain::tools::run_cli(args, std::cout, std::cerr);
}
