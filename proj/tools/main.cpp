#include <iostream>
#include <string>
#include <vector>

#include "vlftbc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string out, err;
    int code = vlftbc::run_cli(args, out, err);
    if (!out.empty()) std::cout << out;
    if (!err.empty()) std::cerr << err << '\n';
    return code;
}
