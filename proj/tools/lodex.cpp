#include <iostream>
#include <string>
#include <vector>

#include "lodex/Cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lodex::cli::main(args, std::cout, std::cerr);
}
