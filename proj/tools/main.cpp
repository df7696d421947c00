#include <iostream>

#include "radiomis/cli.hpp"

int main(int argc, char** argv) { return radiomis::run_cli(argc, argv, std::cout, std::cerr); }
