#include <iostream>
#include <string>
#include <vector>

#include "initpop/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return initpop::run_cli(args, std::cout, std::cerr);
}
