#include "oafem/cli.hpp"

int main(int argc, char** argv) {
    return oafem::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
