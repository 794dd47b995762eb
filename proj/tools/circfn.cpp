#include <iostream>
#include <string>
#include <vector>

#include "circfn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return circfn::cli::run(args, std::cin, std::cout, std::cerr);
}
