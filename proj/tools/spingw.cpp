#include <iostream>

#include "spingw/cli.hpp"

int main(int argc, char **argv)
{
    return spingw::cli::run(argc, argv, std::cout, std::cerr);
}
