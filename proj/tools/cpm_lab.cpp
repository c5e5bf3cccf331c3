#include "cpmlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cpm::cli::run(argc, argv, std::cout, std::cerr); }
