#include <iostream>

#include "qthermo/cli.hpp"

int main(int argc, char** argv) {
  return qthermo::cli::main_entry(argc, argv, std::cout, std::cerr);
}
