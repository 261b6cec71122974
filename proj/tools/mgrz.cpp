#include <iostream>
#include <string>
#include <vector>

#include "mgrz/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    mgrz::CliResult r = mgrz::run_cli(args);
    std::cout << r.out;
    return r.exit_code;
}
