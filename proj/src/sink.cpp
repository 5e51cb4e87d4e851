#include "stockdata/sink.hpp"

#include "stockdata/csv.hpp"
#include "stockdata/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <system_error>

namespace stockdata {

void prepare_directory(const SinkConfig& config) {
    namespace fs = std::filesystem;
    std::error_code ec;

    if (fs::exists(config.directory, ec)) {
        if (!fs::is_directory(config.directory, ec)) {
            throw IoError("output path exists and is not a directory: " +
                          config.directory.string());
        }
        if (config.clobber == ClobberMode::Recreate) {
            fs::remove_all(config.directory, ec);
            if (ec) throw IoError("cannot clear " + config.directory.string() + ": " + ec.message());
        } else if (!fs::is_empty(config.directory, ec)) {
            throw DirectoryExists("output directory " + config.directory.string() +
                                  " is not empty (pass --overwrite to replace it)");
        }
    }
    fs::create_directories(config.directory, ec);
    if (ec) throw IoError("cannot create " + config.directory.string() + ": " + ec.message());
}

std::filesystem::path write_ticker_csv(const std::filesystem::path& directory,
                                       const BarSeries& series) {
    namespace fs = std::filesystem;
    const std::string& symbol = series.ticker.symbol();
    fs::path final_path = directory / (symbol + ".csv");
    fs::path tmp_path = directory / (symbol + ".csv.tmp");

    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp_path.string() + " for writing");
        out << "Date,Open,High,Low,Close,Volume,Name\n";
        for (const Bar& bar : series.bars) {
            out << to_string(bar.date) << ',' << bar.open_text << ',' << bar.high_text << ','
                << bar.low_text << ',' << bar.close_text << ',' << bar.volume << ','
                << csv_escape(symbol) << '\n';
        }
        out.flush();
        if (!out) throw IoError("write failed for " + tmp_path.string());
    }

    std::error_code ec;
    fs::rename(tmp_path, final_path, ec);
    if (ec) {
        fs::remove(tmp_path, ec);
        throw IoError("cannot rename " + tmp_path.string() + " into place");
    }
    return final_path;
}

namespace {

std::size_t count(const FetchSummary& summary, TickerOutcome::Status status) {
    std::size_t n = 0;
    for (const auto& [symbol, outcome] : summary.outcomes) {
        if (outcome.status == status) ++n;
    }
    return n;
}

}  // namespace

std::size_t FetchSummary::collected() const { return count(*this, TickerOutcome::Status::Collected); }
std::size_t FetchSummary::ignored() const { return count(*this, TickerOutcome::Status::Ignored); }
std::size_t FetchSummary::failed() const { return count(*this, TickerOutcome::Status::Failed); }

std::filesystem::path write_summary(const std::filesystem::path& directory,
                                    const FetchSummary& summary) {
    nlohmann::json doc;
    doc["index"] = summary.metadata.index_name;
    doc["start"] = to_string(summary.metadata.start);
    doc["end"] = to_string(summary.metadata.end);
    doc["interval"] = std::string(to_token(summary.metadata.interval));
    doc["tool_version"] = summary.metadata.tool_version;
    doc["generated_at"] = summary.metadata.generated_at;
    doc["counts"] = {
        {"collected", summary.collected()},
        {"ignored", summary.ignored()},
        {"failed", summary.failed()},
    };

    nlohmann::json tickers = nlohmann::json::object();
    for (const auto& [symbol, outcome] : summary.outcomes) {
        nlohmann::json entry;
        switch (outcome.status) {
            case TickerOutcome::Status::Collected:
                entry["status"] = "collected";
                entry["rows"] = outcome.rows;
                break;
            case TickerOutcome::Status::Ignored:
                entry["status"] = "ignored";
                break;
            case TickerOutcome::Status::Failed:
                entry["status"] = "failed";
                entry["reason"] = outcome.reason;
                break;
        }
        tickers[symbol] = std::move(entry);
    }
    doc["tickers"] = std::move(tickers);

    std::filesystem::path path = directory / "_summary.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
    return path;
}

void SummaryBuilder::record(const std::string& symbol, TickerOutcome outcome) {
    std::lock_guard lock(mutex_);
    summary_.outcomes[symbol] = std::move(outcome);
}

FetchSummary SummaryBuilder::take() {
    std::lock_guard lock(mutex_);
    return std::move(summary_);
}

}  // namespace stockdata
