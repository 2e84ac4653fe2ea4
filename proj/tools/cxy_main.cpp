#include <iostream>

#include "clusterxy_cli/cli.hpp"

int main(int argc, char** argv) { return cxy::cli::run(argc, argv, std::cout, std::cerr); }
