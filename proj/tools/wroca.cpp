#include <iostream>
#include <string>
#include <vector>

#include "wroca/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return wroca::cli::run(args, std::cout, std::cerr);
}
