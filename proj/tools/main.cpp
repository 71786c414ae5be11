#include <iostream>

#include "evopoisson/cli.hpp"

int main(int argc, char** argv) { return evopoisson::cli::run(argc, argv, std::cout, std::cerr); }
