#include <iostream>

#include "mhs/cli.hpp"

int main(int argc, char** argv) { return mhs::run(argc, argv, std::cout, std::cerr); }
