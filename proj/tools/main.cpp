#include <iostream>

#include "boole/cli.hpp"

int main(int argc, char** argv) { return boole::cli_dispatch(argc, argv, std::cout, std::cerr); }
