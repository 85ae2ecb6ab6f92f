#include <iostream>

#include "cocaco/cli.hpp"

int main(int argc, char** argv) { return cocaco::cli::main(argc, argv, std::cout, std::cerr); }
