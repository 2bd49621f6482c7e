#include <iostream>

#include "fibzeta/cli.hpp"

int main(int argc, char** argv) {
  return fibzeta::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
