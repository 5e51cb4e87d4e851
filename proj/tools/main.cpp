#include "stockdata/cli.hpp"
#include "stockdata/errors.hpp"
#include "stockdata/runner.hpp"

#include <iostream>

int main(int argc, char** argv) {
    try {
        stockdata::ParseResult parsed = stockdata::parse_args(argc, argv);
        if (parsed.help) {
            std::cout << parsed.help_text;
            return 0;
        }
        return stockdata::run(parsed.config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
