#include <string>
#include <vector>

#include "seqmine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return seqmine::run_cli(args);
}
