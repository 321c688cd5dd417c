#include <iostream>

#include "macstokes/cli.hpp"

int main(int argc, char** argv) { return macstokes::main_entry(argc, argv, std::cout, std::cerr); }
