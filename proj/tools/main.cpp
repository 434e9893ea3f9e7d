#include <string>
#include <vector>

#include "mdlc/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mdlc::run_cli(args);
}
