#include <iostream>

#include "nds/cli.hpp"

int main(int argc, char** argv) { return nds::cli::main(argc, argv, std::cout, std::cerr); }
