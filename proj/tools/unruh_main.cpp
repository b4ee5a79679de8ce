#include <iostream>
#include <string>
#include <vector>

#include "unruh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return unruh::cli::run(args, std::cout, std::cerr);
}
