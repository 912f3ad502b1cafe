#include "semisum_cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return semisum_cli::run_semisum(std::move(args), std::cout);
}
