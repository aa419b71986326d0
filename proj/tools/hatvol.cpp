#include <iostream>

#include "hatvol/cli.hpp"

int main(int argc, char** argv) { return hatvol::cli::main_entry(argc, argv, std::cout, std::cerr); }
