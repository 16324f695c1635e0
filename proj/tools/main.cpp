#include <iostream>
#include <string>
#include <vector>

#include "stochprod/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return stochprod::cli::run(args, std::cout, std::cerr);
}
