#include <iostream>

#include "webtabulate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return webtabulate::cli::run(args, std::cout, std::cerr);
}
