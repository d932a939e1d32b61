#include <iostream>

#include "su2chan/cli.hpp"

int main(int argc, char** argv) { return su2chan::cli::run(argc, argv, std::cout, std::cerr); }
