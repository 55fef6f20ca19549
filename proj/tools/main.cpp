#include <iostream>

#include "gchan/cli.hpp"

int main(int argc, char** argv) { return gchan::run_cli(argc, argv, std::cout, std::cerr); }
