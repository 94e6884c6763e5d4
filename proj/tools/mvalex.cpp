#include <iostream>

#include "mvalex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mvalex::run(args, std::cout, std::cerr, std::cin);
}
