#include "stockdata/cli.hpp"

#include "stockdata/errors.hpp"
#include "stockdata/version.hpp"

#include <CLI11.hpp>

namespace stockdata {

ParseResult parse_args(int argc, const char* const* argv) {
    ParseResult result;
    AppConfig& config = result.config;

    CLI::App app{"Collects per-ticker OHLCV history for a stock index into CSV files."};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    app.add_option("--index", config.index,
                   "Index to collect (sp500, nasdaq100, nasdaq-all, or a --sources entry)")
        ->capture_default_str();
    app.add_option("--symbols", config.symbols,
                   "Comma-separated symbols to collect instead of an index")
        ->delimiter(',');
    app.add_option("--symbols-file", config.symbols_file,
                   "File with one symbol per line ('#' comments allowed)");
    app.add_option("--source-url", config.source_url, "Override the index source URL");
    app.add_option("--column", config.column, "Override the symbol column name");
    app.add_option("--sources", config.sources_file,
                   "JSON file with extra index definitions, merged over the builtins");

    app.add_option("--start", config.start, "First trading day, yyyy-mm-dd")
        ->capture_default_str();
    app.add_option("--end", config.end, "Last trading day, yyyy-mm-dd (inclusive)")
        ->capture_default_str();
    app.add_option("--interval", config.interval, "Bar interval token, e.g. 1d, 1wk, 1mo")
        ->capture_default_str();

    app.add_option("--out", config.out_dir, "Output directory")->capture_default_str();
    app.add_flag("--overwrite", config.overwrite, "Replace the output directory if it exists");

    app.add_flag("--no-round", config.no_round, "Write prices exactly as received");
    app.add_option("--round-places", config.round_places, "Fractional digits to keep")
        ->check(CLI::Range(0, 12))
        ->capture_default_str();

    app.add_option("--concurrency", config.concurrency, "Parallel download workers")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    app.add_option("--rate-limit", config.rate_limit, "Maximum requests per second")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--transport", config.transport,
                   "live, replay:DIR (serve recorded fixtures), or record:DIR")
        ->capture_default_str();

    app.add_flag("--strict", config.strict,
                 "Fail on malformed rows and drop bars whose prices violate OHLC bounds");
    app.add_flag("--quiet", config.quiet, "Suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        result.help = true;
        result.help_text = app.help();
        return result;
    } catch (const CLI::CallForVersion&) {
        result.help = true;
        result.help_text = std::string(kToolName) + " " + kToolVersion + "\n";
        return result;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    return result;
}

}  // namespace stockdata
