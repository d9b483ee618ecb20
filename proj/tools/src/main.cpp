#include <iostream>

#include "seisgrid_cli/cli.hpp"

int main(int argc, char** argv) { return seisgrid::cli::run(argc, argv, std::cout, std::cerr); }
