#include <iostream>

#include "roeflow_cli/experiment.hpp"

int main(int argc, char** argv) { return roeflow::cli::run_cli(argc, argv, std::cout, std::cerr); }
