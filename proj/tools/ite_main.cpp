#include <iostream>

#include "ite/cli.hpp"

int main(int argc, char** argv) { return ite::run_cli(argc, argv, std::cout, std::cerr); }
