#include <iostream>

#include "toda/cli.hpp"

int main(int argc, char** argv) { return toda::cli::dispatch(argc, argv, std::cout, std::cerr); }
