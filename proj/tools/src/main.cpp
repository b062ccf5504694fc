#include <iostream>

#include "recnet_cli/app.hpp"

int main(int argc, char** argv) {
  return recnet::cli::run_cli(argc, argv, std::cout, std::cerr);
}
