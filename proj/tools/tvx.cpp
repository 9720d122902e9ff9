#include <iostream>

#include "tvx/cli.hpp"

int main(int argc, char** argv) { return tvx::cli::run(argc, argv, std::cout, std::cerr); }
