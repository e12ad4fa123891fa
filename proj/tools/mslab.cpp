#include <iostream>

#include "mslab/cli.hpp"

int main(int argc, char** argv) { return mslab::cli::run(argc, argv, std::cout, std::cerr); }
