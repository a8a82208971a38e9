#include <iostream>

#include "nearshift/cli.hpp"

int main(int argc, char** argv) { return nearshift::cli_main(argc, argv, std::cout, std::cerr); }
