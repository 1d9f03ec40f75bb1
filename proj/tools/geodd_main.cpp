#include <iostream>

#include "geodd/cli.hpp"

int main(int argc, char** argv) { return geodd::cli::run(argc, argv, std::cout, std::cerr); }
