#include <iostream>

#include "lpmhd_tools/cli.hpp"

int main(int argc, char** argv) { return lpmhd::tools::run_cli(argc, argv, std::cout, std::cerr); }
