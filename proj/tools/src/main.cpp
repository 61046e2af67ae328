#include <iostream>

#include "loopfactor/cli/app.hpp"

int main(int argc, char** argv) { return loopfactor::cli::run(argc, argv, std::cout, std::cerr); }
