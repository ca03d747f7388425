#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return wdro::cli::run(argc, argv, std::cout, std::cerr); }
