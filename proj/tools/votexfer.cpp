#include <iostream>
#include <string>
#include <vector>

#include "votexfer/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return votexfer::cli::run(args, std::cout, std::cerr);
}
