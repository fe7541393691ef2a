#include <iostream>

#include "bimorph/cli.hpp"

int main(int argc, char** argv)
{
    return bimorph::run_cli(argc, argv, std::cout, std::cerr);
}
