#include <iostream>

#include "qadder/cli.hpp"

int main(int argc, char **argv) {
    return qadder::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
