#include <iostream>

#include "fcprobe/tools/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fcprobe::tools::run_cli(args, std::cout, std::cerr);
}
