#include <iostream>

#include "probtree/cli.hpp"

int main(int argc, char** argv) {
  return probtree::cli::run_cli(argc, argv, std::cout, std::cerr);
}
