#include <iostream>

#include "sptlab/cli.hpp"

int main(int argc, char** argv) { return sptlab::run_cli(argc, argv, std::cout, std::cerr); }
