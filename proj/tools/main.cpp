#include "bandext/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return bandext::cli::run(argc, argv, std::cout, std::cerr);
}
