#include <iostream>
#include <string>
#include <vector>

#include "gwzw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gwzw::run_command(args, std::cout, std::cerr);
}
