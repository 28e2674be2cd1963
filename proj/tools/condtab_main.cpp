#include <iostream>

#include "condtab/cli.hpp"

int main(int argc, char** argv) { return condtab::main_entry(argc, argv, std::cout, std::cerr); }
