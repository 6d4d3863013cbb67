#include <iostream>

#include "makeev/cli.hpp"

int main(int argc, char** argv) {
  return makeev::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
