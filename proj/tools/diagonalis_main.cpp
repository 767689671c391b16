#include <iostream>

#include "diagonalis/cli.hpp"

int main(int argc, char** argv) {
  return diagonalis::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
