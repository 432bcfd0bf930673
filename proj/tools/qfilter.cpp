#include <iostream>

#include "qfilter/cli.hpp"

int main(int argc, char** argv) { return qfilter::cli::main_entry(argc, argv, std::cout, std::cerr); }
