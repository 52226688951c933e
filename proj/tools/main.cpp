#include <iostream>
#include <string>
#include <vector>

#include "howebench/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return howebench::dispatch(args, std::cout, std::cerr);
}
