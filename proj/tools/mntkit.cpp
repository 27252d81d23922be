#include <iostream>

#include "mntkit/cli.hpp"

int main(int argc, char** argv) { return mnt::cli::run(argc, argv, std::cout, std::cerr); }
