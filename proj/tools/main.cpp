#include <iostream>

#include "dirac_atlas/cli.hpp"

int main(int argc, char** argv) { return dirac_atlas::cli::run(argc, argv, std::cout, std::cerr); }
