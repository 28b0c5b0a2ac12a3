#include <iostream>

#include "walkpred/cli.hpp"

int main(int argc, char** argv) { return walkpred::cli::run(argc, argv, std::cout, std::cerr); }
