#include "eforge/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return eforge::cli::run(argc, argv, std::cout, std::cerr); }
