// noisent.cpp — command-line entry point

#include <iostream>

#include "commands.hpp"
#include "run_config.hpp"

int main(int argc, char** argv) {
    const auto parsed = noisent::cli::parse_command_line(argc, argv);
    if (!parsed.config) return parsed.exit_code;
    return noisent::cli::run(*parsed.config, std::cout, std::cerr);
}
