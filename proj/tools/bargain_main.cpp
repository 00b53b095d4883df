#include <iostream>

#include "bargain/cli.h"

int main(int argc, char** argv) { return bargain::run_cli(argc, argv, std::cout, std::cerr); }
