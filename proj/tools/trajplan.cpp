#include <iostream>

#include "trajplan/cli/commands.hpp"

int main(int argc, char** argv) {
    return trajplan::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
