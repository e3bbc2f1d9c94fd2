#include <iostream>

#include "spreadspeed/cli/commands.hpp"

int main(int argc, char** argv) {
  return spreadspeed::cli::main_entry(argc, argv, std::cout, std::cerr);
}
