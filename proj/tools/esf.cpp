#include <iostream>

#include "esf/cli.hpp"

int main(int argc, char** argv) { return esf::cli::run(argc, argv, std::cout, std::cerr); }
