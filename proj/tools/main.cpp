#include <string>
#include <vector>

#include "covkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return covkit::cli::run(args);
}
