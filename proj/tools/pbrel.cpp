#include <iostream>
#include <string>
#include <vector>

#include "pbrel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pbrel::run_cli(args, std::cout, std::cerr);
}
