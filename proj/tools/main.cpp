#include <iostream>
#include <string>
#include <vector>

#include "tgrass/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tgrass::cli::run(args, std::cout, std::cerr);
}
