#include <iostream>

#include "srptlab/cli.hpp"

int main(int argc, char** argv) { return srptlab::run_cli(argc, argv, std::cout, std::cerr); }
