#include <iostream>
#include <string>
#include <vector>

#include "hwbounds/cli.hpp"

int main(int argc, char** argv) {
  return hwb::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
