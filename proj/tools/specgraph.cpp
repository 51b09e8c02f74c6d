#include <iostream>
#include <string>
#include <vector>

#include "specgraph/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return specgraph::cli::run(std::move(args), std::cout, std::cerr);
}
