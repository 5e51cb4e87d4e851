#pragma once

#include <string>
#include <vector>

namespace stockdata {

struct AppConfig {
    std::string index = "sp500";
    std::vector<std::string> symbols;    // explicit list, overrides the index
    std::string symbols_file;            // file with one symbol per line
    std::string source_url;              // replaces the index source locator
    std::string column;                  // replaces the index symbol column
    std::string sources_file;            // JSON registry merged over builtins

    std::string start = "2018-01-01";
    std::string end = "2020-12-31";
    std::string interval = "1d";

    std::string out_dir = "data";
    bool overwrite = false;

    bool no_round = false;
    int round_places = 2;

    int concurrency = 4;
    double rate_limit = 2.0;
    std::string transport = "live";      // live | replay:DIR | record:DIR

    bool strict = false;
    bool quiet = false;
};

struct ParseResult {
    AppConfig config;
    bool help = false;
    std::string help_text;
};

// Parses command-line arguments. Throws UsageError on invalid input;
// --help yields help=true instead of a config.
ParseResult parse_args(int argc, const char* const* argv);

}  // namespace stockdata
