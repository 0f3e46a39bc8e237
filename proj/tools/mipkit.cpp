#include <iostream>

#include "mipkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mipkit::run_cli(args, std::cout, std::cerr);
}
