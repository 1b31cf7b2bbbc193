#include <iostream>
#include <string>
#include <vector>

#include "vgprod/cli.hpp"

int main(int argc, char** argv) {
  std::cout.imbue(std::locale::classic());
  const std::vector<std::string> args(argv + 1, argv + argc);
  return vgprod::run_cli(args, std::cout, std::cerr);
}
