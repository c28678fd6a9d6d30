/* cfg_main.cpp -- entry point of the cfg command line tool */

#include <iostream>
#include <string>
#include <vector>

#include "cfg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cfg::cli::run(args, std::cout, std::cerr);
}
