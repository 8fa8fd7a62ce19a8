#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return pmdiam::cli::main_entry(argc, argv, std::cin, std::cout, std::cerr); }
