#include <iostream>
#include <string>
#include <vector>

#include "skac/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return skac::run_cli(args, std::cout, std::cerr);
}
