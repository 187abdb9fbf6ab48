#include <iostream>
#include <string>
#include <vector>

#include "forge/cli.hpp"

int main(int argc, char** argv) {
  return forge::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
