#include <iostream>
#include <string>
#include <vector>

#include "oversparse/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return oversparse::cli::run(args, std::cout, std::cerr);
}
