#include <iostream>

#include "fcw/cli.hpp"

int main(int argc, char** argv) {
  return fcw::run_cli(argc, argv, std::cout, std::cerr);
}
