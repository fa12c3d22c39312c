#include <iostream>

#include "pmc/cli.hpp"

int main(int argc, char** argv) { return pmc::cli::run(argc, argv, std::cout, std::cerr); }
