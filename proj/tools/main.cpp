#include <iostream>
#include <string>
#include <vector>

#include "xforge/cli.hpp"

int main(int argc, char** argv) {
    return xforge::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
