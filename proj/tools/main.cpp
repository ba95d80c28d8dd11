#include <iostream>
#include <string>
#include <vector>

#include "ulln/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ulln::cli::run(args, std::cout, std::cerr);
}
