#include <iostream>
#include <string>
#include <vector>

#include "wrcirc/cli_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wrc::run_cli(args, std::cout, std::cerr);
}
