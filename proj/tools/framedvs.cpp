#include <iostream>

#include "framedvs/cli.hpp"

int main(int argc, char** argv) { return framedvs::run_cli(argc, argv, std::cout, std::cerr); }
