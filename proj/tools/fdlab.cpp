#include "fdlab/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fdlab::cli::run_cli(args);
}
