#pragma once

#include "stockdata/client.hpp"
#include "stockdata/timeframe.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>

namespace stockdata {

enum class ClobberMode { Refuse, Recreate };

struct SinkConfig {
    std::filesystem::path directory;
    ClobberMode clobber = ClobberMode::Refuse;
};

// Creates the output directory. Refuse throws DirectoryExists when the
// directory already holds files; Recreate deletes and remakes it.
void prepare_directory(const SinkConfig& config);

// Writes <symbol>.csv with the layout Date,Open,High,Low,Close,Volume,Name,
// one bar per line, LF endings, trailing newline. The file appears under a
// temporary name first and is renamed into place, so readers never observe
// a partial file. Returns the final path.
std::filesystem::path write_ticker_csv(const std::filesystem::path& directory,
                                       const BarSeries& series);

struct TickerOutcome {
    enum class Status { Collected, Ignored, Failed };
    Status status = Status::Ignored;
    std::size_t rows = 0;     // Collected only
    std::string reason;       // Failed only
};

struct RunMetadata {
    std::string index_name;
    CivilDate start;
    CivilDate end;
    Interval interval = Interval::Day1;
    std::string tool_version;
    // ISO 8601 UTC. The only summary field allowed to differ between two
    // runs over identical inputs.
    std::string generated_at;
};

struct FetchSummary {
    RunMetadata metadata;
    std::map<std::string, TickerOutcome> outcomes;

    std::size_t collected() const;
    std::size_t ignored() const;
    std::size_t failed() const;
};

// Serializes the summary to <directory>/_summary.json. Tickers are keyed
// by symbol, so the bytes do not depend on completion order.
std::filesystem::path write_summary(const std::filesystem::path& directory,
                                    const FetchSummary& summary);

// Collects per-ticker outcomes from concurrent workers.
class SummaryBuilder {
public:
    explicit SummaryBuilder(RunMetadata metadata) : summary_{std::move(metadata), {}} {}

    void record(const std::string& symbol, TickerOutcome outcome);
    FetchSummary take();

private:
    std::mutex mutex_;
    FetchSummary summary_;
};

}  // namespace stockdata
