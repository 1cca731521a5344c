#include "slantcheck/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return slantcheck::cli_main(argc, argv, std::cout, std::cerr); }
