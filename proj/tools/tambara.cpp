#include <iostream>

#include "tambara/cli.hpp"

int main(int argc, char** argv) { return tambara::cli::run(argc, argv, {std::cout, std::cerr}); }
