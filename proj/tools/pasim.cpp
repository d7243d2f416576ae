#include <iostream>

#include "pasim/cli.hpp"

int main(int argc, char** argv) { return pasim::cli::main(argc, argv, std::cout, std::cerr); }
