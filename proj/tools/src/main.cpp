#include <iostream>

#include "oraclesim_cli/cli.hpp"

int main(int argc, char** argv) { return oraclesim::cli::run_cli(argc, argv, std::cout, std::cerr); }
