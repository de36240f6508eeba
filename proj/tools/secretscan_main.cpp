#include <iostream>

#include "secretscan/cli.hpp"

int main(int argc, char** argv) { return secretscan::run_cli(argc, argv, std::cout, std::cerr); }
