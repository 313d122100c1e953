#include "mwt/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return mwt::run_cli(argc, argv, std::cout, std::cerr);
}
