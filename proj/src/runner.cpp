#include "stockdata/runner.hpp"

#include "stockdata/client.hpp"
#include "stockdata/errors.hpp"
#include "stockdata/rate_limiter.hpp"
#include "stockdata/registry.hpp"
#include "stockdata/sink.hpp"
#include "stockdata/symbols.hpp"
#include "stockdata/timeframe.hpp"
#include "stockdata/transport.hpp"
#include "stockdata/version.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdlib>
#include <ctime>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

namespace stockdata {

namespace {

volatile std::sig_atomic_t g_interrupted = 0;

void handle_interrupt(int) { g_interrupted = 1; }

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string default_user_agent() {
    const char* env = std::getenv("STOCKDATA_USER_AGENT");
    if (env && *env) return env;
    return "Mozilla/5.0 (compatible; " + std::string(kToolName) + "/" + kToolVersion + ")";
}

std::unique_ptr<Transport> make_transport(const std::string& mode) {
    if (mode == "live") return std::make_unique<CurlTransport>(default_user_agent());
    if (mode.rfind("replay:", 0) == 0) {
        std::string dir = mode.substr(7);
        if (dir.empty()) throw UsageError("replay transport needs a directory: replay:DIR");
        return std::make_unique<ReplayTransport>(dir);
    }
    if (mode.rfind("record:", 0) == 0) {
        std::string dir = mode.substr(7);
        if (dir.empty()) throw UsageError("record transport needs a directory: record:DIR");
        return std::make_unique<RecordingTransport>(
            std::make_unique<CurlTransport>(default_user_agent()), dir);
    }
    throw UsageError("unknown transport '" + mode + "' (expected live, replay:DIR or record:DIR)");
}

IndexSource resolve_source(const AppConfig& config, std::string& index_name) {
    if (!config.symbols.empty() && !config.symbols_file.empty()) {
        throw UsageError("--symbols and --symbols-file are mutually exclusive");
    }
    if (!config.symbols.empty()) {
        index_name = "custom";
        std::string joined;
        for (const auto& symbol : config.symbols) {
            if (!joined.empty()) joined += ',';
            joined += symbol;
        }
        return IndexSource{.kind = SourceKind::InlineList, .locator = joined};
    }
    if (!config.symbols_file.empty()) {
        index_name = "custom";
        return IndexSource{.kind = SourceKind::LocalFile, .locator = config.symbols_file};
    }

    SourceRegistry registry = builtin_sources();
    if (!config.sources_file.empty()) merge_sources_file(registry, config.sources_file);
    auto it = registry.find(config.index);
    if (it == registry.end()) {
        std::string known;
        for (const auto& [name, unused] : registry) {
            if (!known.empty()) known += ", ";
            known += name;
        }
        throw UsageError("unknown index '" + config.index + "' (known: " + known + ")");
    }
    index_name = it->first;
    IndexSource source = it->second;
    if (!config.source_url.empty()) {
        source.locator = config.source_url;
        // A .csv path picks the CSV reader; anything else is an HTML page.
        std::string path_part = config.source_url.substr(0, config.source_url.find('?'));
        source.kind = path_part.ends_with(".csv") ? SourceKind::RemoteCsv : SourceKind::HtmlTable;
    }
    if (!config.column.empty()) source.column = config.column;
    return source;
}

}  // namespace

int run(const AppConfig& config, std::ostream& out, std::ostream& err) {
    CivilDate start = parse_civil_date(config.start);
    CivilDate end = parse_civil_date(config.end);
    DateRange range = make_range(start, end);
    Interval interval = parse_interval(config.interval);

    std::string index_name;
    IndexSource source = resolve_source(config, index_name);
    std::unique_ptr<Transport> transport = make_transport(config.transport);

    ConstituentList constituents =
        load_constituents(index_name, source, *transport,
                          {.overrides = default_symbol_overrides(), .strict = config.strict});

    prepare_directory({.directory = config.out_dir,
                       .clobber = config.overwrite ? ClobberMode::Recreate : ClobberMode::Refuse});

    RateLimiter limiter(config.rate_limit);
    QuoteClient client(*transport, {.limiter = &limiter});

    RunMetadata metadata;
    metadata.index_name = index_name;
    metadata.start = start;
    metadata.end = end;
    metadata.interval = interval;
    metadata.tool_version = kToolVersion;
    metadata.generated_at = utc_timestamp();
    SummaryBuilder builder(metadata);

    SeriesOptions series_options;
    series_options.round.enabled = !config.no_round;
    series_options.round.places = config.round_places;
    series_options.strict = config.strict;

    std::mutex io_mutex;
    const auto& tickers = constituents.tickers;

    auto report_skip = [&](const std::string& symbol) {
        builder.record(symbol, {.status = TickerOutcome::Status::Ignored});
        if (!config.quiet) {
            std::lock_guard lock(io_mutex);
            out << symbol << " didn't exist in this entire time period.\n";
        }
    };

    auto process_one = [&](const Ticker& ticker) {
        const std::string& symbol = ticker.symbol();
        try {
            auto body = client.fetch_history_csv(
                {.ticker = ticker, .range = range, .interval = interval});
            if (!body) {
                report_skip(symbol);
                return;
            }
            CsvTable quotes = parse_quote_csv(*body, config.strict);
            BarSeries series =
                to_bar_series(ticker, substitute_adjusted_close(quotes), series_options);
            for (const auto& warning : series.warnings) {
                std::lock_guard lock(io_mutex);
                err << "warning: " << warning << "\n";
            }
            if (series.bars.empty()) {
                report_skip(symbol);
                return;
            }
            write_ticker_csv(config.out_dir, series);
            builder.record(symbol, {.status = TickerOutcome::Status::Collected,
                                    .rows = series.bars.size()});
            if (!config.quiet) {
                std::lock_guard lock(io_mutex);
                out << symbol << ": collected " << series.bars.size() << " rows\n";
            }
        } catch (const std::exception& e) {
            builder.record(symbol,
                           {.status = TickerOutcome::Status::Failed, .reason = e.what()});
            std::lock_guard lock(io_mutex);
            err << "error: " << symbol << ": " << e.what() << "\n";
        }
    };

    g_interrupted = 0;
    auto previous_handler = std::signal(SIGINT, handle_interrupt);

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tickers.size()) break;
            if (g_interrupted) {
                builder.record(tickers[i].symbol(),
                               {.status = TickerOutcome::Status::Failed, .reason = "interrupted"});
                continue;
            }
            process_one(tickers[i]);
        }
    };

    size_t worker_count =
        std::min(static_cast<size_t>(std::max(config.concurrency, 1)), tickers.size());
    std::vector<std::thread> threads;
    threads.reserve(worker_count);
    for (size_t i = 0; i < worker_count; ++i) threads.emplace_back(worker);
    for (auto& thread : threads) thread.join();

    std::signal(SIGINT, previous_handler == SIG_ERR ? SIG_DFL : previous_handler);

    FetchSummary summary = builder.take();
    write_summary(config.out_dir, summary);

    if (!config.quiet) {
        out << "Total no. of companies whose data has been collected: " << summary.collected()
            << "\n";
    }
    if (g_interrupted) {
        err << "interrupted; partial results in " << config.out_dir << "\n";
    }
    return summary.failed() == 0 ? 0 : 2;
}

}  // namespace stockdata
