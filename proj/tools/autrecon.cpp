#include <iostream>

#include "autrecon/cli.hpp"

int main(int argc, char** argv) {
  autrecon::cli::RunConfig config;
  if (const auto status = autrecon::cli::parse_args(argc, argv, config)) return *status;
  return autrecon::cli::run(config, std::cout, std::cerr);
}
