#include <string>
#include <vector>

#include "grandsart_cli.hpp"

int main(int argc, char** argv) {
    return grandsart::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
