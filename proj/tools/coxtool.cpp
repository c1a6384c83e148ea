#include <iostream>

#include "coxpoly/cli.hpp"

int main(int argc, char** argv) { return coxpoly::run_cli(argc, argv, std::cout, std::cerr); }
