#include <iostream>

#include "mwt/cli/cli.hpp"

int main(int argc, char** argv) { return mwt::cli::run_cli(argc, argv, std::cout, std::cerr); }
