// dephasim.cpp — Command-line front end

#include <string>
#include <vector>

#include "dephasim/cli.hpp"

int main(int argc, char** argv) {
    return dephasim::run(std::vector<std::string>(argv, argv + argc));
}
