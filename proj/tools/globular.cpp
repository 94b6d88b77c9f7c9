#include <iostream>

#include "globular/cli.hpp"

int main(int argc, char** argv) {
  return globular::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
