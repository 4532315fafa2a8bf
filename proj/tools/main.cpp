#include <string>
#include <vector>

#include "amh/cli.hpp"

int main(int argc, char** argv) {
  return amh::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
