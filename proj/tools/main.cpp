#include <iostream>

#include "latconv/cli.hpp"

int main(int argc, char** argv) { return latconv::cli::run(argc, argv, std::cout, std::cerr); }
