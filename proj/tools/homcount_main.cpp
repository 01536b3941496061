#include <string>
#include <vector>

#include "homcount/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return homcount::run_command(std::move(args));
}
