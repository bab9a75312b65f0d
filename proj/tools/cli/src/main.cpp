#include <iostream>

#include "imd/cli/run.hpp"

int main(int argc, char** argv) { return imd::cli::main_entry(argc, argv, std::cout, std::cerr); }
