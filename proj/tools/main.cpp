#include <iostream>

#include "gasald/io/cli.hpp"

int main(int argc, char** argv) { return gasald::io::run_command(argc, argv, std::cout, std::cerr); }
