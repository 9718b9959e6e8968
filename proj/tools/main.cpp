#include <iostream>
#include <string>
#include <vector>

#include "argyris/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return argyris::run_cli(args, std::cout, std::cerr);
}
