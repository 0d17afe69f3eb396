#include <iostream>

#include "opfactor/commands.hpp"

int main(int argc, char** argv) { return opfactor::run_cli(argc, argv, std::cout, std::cerr); }
