#include <iostream>

#include "abc/cli.hpp"

int main(int argc, char** argv) {
  return abc::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
