#include "jacobs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return jacobs::cli::run(argc, argv, std::cout, std::cerr); }
