#include <vector>

#include "burgers/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return burgers::run_cli(args);
}
