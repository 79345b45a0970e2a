#include <iostream>

#include "blockade/cli.hpp"

int main(int argc, char** argv) {
  return blockade::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
