#include <iostream>

#include "torbase/cli.hpp"

int main(int argc, char** argv) { return torbase::cli::run(argc, argv, std::cout, std::cerr); }
