#include <iostream>
#include <string>
#include <vector>

#include "idealkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  idealkit::CliResult r = idealkit::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
