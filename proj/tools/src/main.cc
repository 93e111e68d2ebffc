#include <iostream>

#include "lcbm/cli.h"

int main(int argc, char** argv) {
  return lcbm::run_cli(argc, argv, std::cout, std::cerr);
}
