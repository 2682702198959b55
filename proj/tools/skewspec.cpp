#include <iostream>
#include <string>
#include <vector>

#include "skewspec/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return skewspec::run_cli(args, std::cout, std::cerr);
}
