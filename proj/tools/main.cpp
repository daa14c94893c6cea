#include <iostream>

#include "beliefbound/cli.hpp"

int main(int argc, char** argv) { return beliefbound::run_cli(argc, argv, std::cout, std::cerr); }
