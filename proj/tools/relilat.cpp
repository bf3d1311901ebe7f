#include <iostream>
#include <string>
#include <vector>

#include "relilat/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return relilat::run(args, std::cout, std::cerr);
}
