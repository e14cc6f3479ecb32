#include <iostream>
#include <string>
#include <vector>

#include "cayspec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cayspec::run_cli(args, std::cout, std::cerr);
}
