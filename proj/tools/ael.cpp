#include <iostream>

#include "ael/cli/commands.hpp"

int main(int argc, char** argv) { return ael::cli::run_cli(argc, argv, std::cout, std::cerr); }
