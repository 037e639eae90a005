#include "seernf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return seernf::cli::run(argc, argv, std::cout, std::cerr);
}
