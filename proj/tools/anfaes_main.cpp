#include <iostream>

#include "anfaes/cli.hpp"

int main(int argc, char** argv) {
    return anfaes::cli::run(argc, argv, std::cout, std::cerr);
}
