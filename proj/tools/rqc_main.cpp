#include <string>
#include <vector>

#include "rqc/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return rqc::run_cli(args);
}
