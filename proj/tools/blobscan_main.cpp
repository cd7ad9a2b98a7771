#include <iostream>

#include "blobscan/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return blobscan::run_cli(args, std::cout, std::cerr);
}
