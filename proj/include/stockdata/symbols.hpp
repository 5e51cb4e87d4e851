#pragma once

#include "stockdata/html_table.hpp"
#include "stockdata/transport.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stockdata {

// A normalized stock symbol in the quote provider's convention: uppercase,
// restricted to [A-Z0-9][A-Z0-9.-]*, safe as a file-name stem.
class Ticker {
public:
    Ticker() = default;

    const std::string& symbol() const { return symbol_; }

    bool operator==(const Ticker&) const = default;
    auto operator<=>(const Ticker&) const = default;

private:
    friend Ticker normalize_symbol(const std::string&, const std::map<std::string, std::string>&);
    explicit Ticker(std::string symbol) : symbol_(std::move(symbol)) {}

    std::string symbol_;
};

// Symbol fixups consulted before the general rule. Shipped with the two
// class-share entries whose listing-site spelling differs from the quote
// provider's.
using SymbolOverrides = std::map<std::string, std::string>;
const SymbolOverrides& default_symbol_overrides();

// Uppercases, consults the override map, then applies the class-share rule
// '.' -> '-'. Idempotent. Throws InvalidSymbol when the input is empty
// after trimming or the result violates the ticker grammar.
Ticker normalize_symbol(const std::string& raw,
                        const SymbolOverrides& overrides = default_symbol_overrides());

enum class SourceKind { HtmlTable, RemoteCsv, LocalFile, InlineList };

// Where a constituent list comes from and how to pull the symbols out.
struct IndexSource {
    SourceKind kind = SourceKind::InlineList;
    std::string locator;               // URL, path, or the inline list itself
    std::string column;                // header name, e.g. "Symbol" or "Ticker"
    std::optional<int> table_hint;     // positional fallback for HTML pages
};

struct ConstituentList {
    std::string index_name;
    std::vector<Ticker> tickers;
    std::chrono::system_clock::time_point retrieved_at;
    IndexSource source;
};

// Returns the named column from the first table whose header contains it
// (exact, case-sensitive). When no header matches and a hint is set, the
// table at that index is retried with a case-insensitive substring match,
// which survives header renames. Throws ColumnNotFound otherwise.
std::vector<std::string> select_symbol_column(const std::vector<HtmlTable>& tables,
                                              const std::string& column,
                                              std::optional<int> table_hint);

// Downloads a CSV registry and returns the named column in file order,
// empty cells dropped. Rows with the wrong field count are skipped unless
// strict. Throws TransportError, ColumnNotFound, or CsvParseError.
std::vector<std::string> fetch_remote_csv(const std::string& url, const std::string& column,
                                          Transport& transport, bool strict = false);

struct LoadOptions {
    SymbolOverrides overrides = default_symbol_overrides();
    bool strict = false;
};

// Acquires, normalizes and de-duplicates the constituents of one index.
// Duplicates keep their first occurrence; source order is preserved.
// Throws EmptyConstituentList when nothing survives normalization.
ConstituentList load_constituents(const std::string& index_name, const IndexSource& source,
                                  Transport& transport, const LoadOptions& options = {});

}  // namespace stockdata
