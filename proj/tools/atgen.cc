#include <iostream>

#include "atgen/cli.h"

int main(int argc, char** argv) {
  return atgen::run_cli(argc, argv, std::cout, std::cerr);
}
