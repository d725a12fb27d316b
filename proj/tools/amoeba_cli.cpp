#include "amoeba/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return amoeba::cli::run(argc, argv, std::cout, std::cerr); }
