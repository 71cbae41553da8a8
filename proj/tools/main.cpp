#include "adini/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return adini::cli::run(argc, argv, std::cout, std::cerr); }
