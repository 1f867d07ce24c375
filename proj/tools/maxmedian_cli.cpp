#include <iostream>
#include <string>
#include <vector>

#include "maxmedian/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return maxmedian::cli::main(args, std::cout, std::cerr);
}
