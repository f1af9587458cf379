#include <iostream>

#include "spreadpc/cli.hpp"

int main(int argc, char** argv) {
  return spreadpc::cli::run(argc, argv, std::cout, std::cerr);
}
