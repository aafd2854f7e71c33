#include <iostream>

#include "vcap/run.hpp"

int main(int argc, char** argv) { return vcap::cli_main(argc, argv, std::cout, std::cerr); }
