#include <iostream>

#include "rumor/cli.hpp"

int main(int argc, char** argv) { return rumor::cli::run_cli(argc, argv, std::cout, std::cerr); }
