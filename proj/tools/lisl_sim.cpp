#include <iostream>

#include "lisl/cli.hpp"

int main(int argc, char** argv) { return lisl::cli::run(argc, argv, std::cout, std::cerr); }
