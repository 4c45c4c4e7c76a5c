#include <iostream>

#include "fracstoch/cli.hpp"

int main(int argc, char** argv) { return fracstoch::cli::run(argc, argv, std::cout, std::cerr); }
