#include <iostream>

#include "tau2/cli.hpp"

int main(int argc, char** argv) { return tau2::run_cli(argc, argv, std::cout, std::cerr); }
