#include <iostream>

#include "skewgroup/analysis.hpp"

int main(int argc, char** argv) { return skewgroup::run_cli(argc, argv, std::cout, std::cerr); }
