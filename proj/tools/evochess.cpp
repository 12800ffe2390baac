#include <iostream>

#include "evochess/cli.hpp"

int main(int argc, char** argv) { return evochess::cli::dispatch(argc, argv, std::cout, std::cerr); }
