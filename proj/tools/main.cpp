#include "gapk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return gapk::cli::dispatch(argc, argv, std::cout, std::cerr);
}
