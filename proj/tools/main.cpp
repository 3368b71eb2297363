#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "curvedepth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return curvedepth::run_cli(args, std::cout, std::cerr, isatty(STDERR_FILENO) != 0);
}
