#include "prft/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return prft::cli::run(argc, argv, std::cout, std::cerr); }
