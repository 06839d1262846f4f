#include <iostream>
#include <string>
#include <vector>

#include "s2c/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return s2c::cli::run(std::move(args), std::cout, std::cerr);
}
