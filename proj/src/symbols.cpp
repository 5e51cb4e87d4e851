#include "stockdata/symbols.hpp"

#include "stockdata/csv.hpp"
#include "stockdata/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace stockdata {

namespace {

std::string trim(std::string_view s) {
    size_t begin = 0;
    size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

bool valid_ticker(std::string_view s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s.front());
    if (!std::isupper(head) && !std::isdigit(head)) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isupper(u) || std::isdigit(u) || c == '.' || c == '-';
    });
}

}  // namespace

const SymbolOverrides& default_symbol_overrides() {
    static const SymbolOverrides overrides = {
        {"BRK.B", "BRK-B"},
        {"BF.B", "BF-B"},
    };
    return overrides;
}

Ticker normalize_symbol(const std::string& raw, const SymbolOverrides& overrides) {
    std::string s = trim(raw);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (s.empty()) throw InvalidSymbol("empty symbol");

    if (auto it = overrides.find(s); it != overrides.end()) {
        s = it->second;
    } else {
        std::replace(s.begin(), s.end(), '.', '-');
    }

    if (!valid_ticker(s)) throw InvalidSymbol("invalid symbol: '" + raw + "'");
    return Ticker(std::move(s));
}

std::vector<std::string> select_symbol_column(const std::vector<HtmlTable>& tables,
                                              const std::string& column,
                                              std::optional<int> table_hint) {
    auto column_values = [&](const HtmlTable& table) -> std::optional<std::vector<std::string>> {
        auto it = std::find(table.columns.begin(), table.columns.end(), column);
        if (it == table.columns.end()) return std::nullopt;
        auto idx = static_cast<size_t>(it - table.columns.begin());
        std::vector<std::string> values;
        values.reserve(table.rows.size());
        for (const auto& row : table.rows) {
            values.push_back(idx < row.size() ? row[idx] : std::string());
        }
        return values;
    };

    for (const auto& table : tables) {
        if (auto values = column_values(table)) return *std::move(values);
    }

    // The hinted table gets a second chance with a relaxed header match,
    // which tolerates renames like "Ticker" becoming "Ticker symbol".
    if (table_hint && *table_hint >= 0 && static_cast<size_t>(*table_hint) < tables.size()) {
        auto lowered = [](std::string_view s) {
            std::string out(s);
            std::transform(out.begin(), out.end(), out.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            return out;
        };
        const auto& table = tables[static_cast<size_t>(*table_hint)];
        const std::string needle = lowered(column);
        for (size_t j = 0; j < table.columns.size(); ++j) {
            if (lowered(table.columns[j]).find(needle) == std::string::npos) continue;
            std::vector<std::string> values;
            values.reserve(table.rows.size());
            for (const auto& row : table.rows) {
                values.push_back(j < row.size() ? row[j] : std::string());
            }
            return values;
        }
    }
    throw ColumnNotFound("no table with column '" + column + "' among " +
                         std::to_string(tables.size()) + " table(s)");
}

std::vector<std::string> fetch_remote_csv(const std::string& url, const std::string& column,
                                          Transport& transport, bool strict) {
    HttpResponse response = transport.execute({.url = url});
    if (response.status != 200) {
        throw TransportError("GET " + url + " returned status " + std::to_string(response.status));
    }
    CsvTable table = parse_csv(response.body, {.strict = strict});
    auto idx = table.column_index(column);
    if (!idx) throw ColumnNotFound("CSV at " + url + " has no column '" + column + "'");

    std::vector<std::string> values;
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        if (*idx < row.size() && !row[*idx].empty()) values.push_back(row[*idx]);
    }
    return values;
}

namespace {

std::vector<std::string> read_symbol_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open symbol file: " + path);
    std::vector<std::string> symbols;
    std::string line;
    while (std::getline(in, line)) {
        std::string entry = trim(line);
        if (entry.empty() || entry.front() == '#') continue;
        symbols.push_back(std::move(entry));
    }
    return symbols;
}

std::vector<std::string> split_inline_list(const std::string& list) {
    std::vector<std::string> symbols;
    std::stringstream stream(list);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::string entry = trim(item);
        if (!entry.empty()) symbols.push_back(std::move(entry));
    }
    return symbols;
}

std::vector<std::string> fetch_html_column(const IndexSource& source, Transport& transport) {
    HttpResponse response = transport.execute({.url = source.locator});
    if (response.status != 200) {
        throw TransportError("GET " + source.locator + " returned status " +
                             std::to_string(response.status));
    }
    auto tables = extract_tables(response.body);
    return select_symbol_column(tables, source.column, source.table_hint);
}

}  // namespace

ConstituentList load_constituents(const std::string& index_name, const IndexSource& source,
                                  Transport& transport, const LoadOptions& options) {
    std::vector<std::string> raw;
    switch (source.kind) {
        case SourceKind::HtmlTable:
            raw = fetch_html_column(source, transport);
            break;
        case SourceKind::RemoteCsv:
            raw = fetch_remote_csv(source.locator, source.column, transport, options.strict);
            break;
        case SourceKind::LocalFile:
            raw = read_symbol_file(source.locator);
            break;
        case SourceKind::InlineList:
            raw = split_inline_list(source.locator);
            break;
    }

    ConstituentList list;
    list.index_name = index_name;
    list.source = source;
    list.retrieved_at = std::chrono::system_clock::now();

    std::unordered_set<std::string> seen;
    for (const auto& cell : raw) {
        if (trim(cell).empty()) continue;
        Ticker ticker = normalize_symbol(cell, options.overrides);
        if (seen.insert(ticker.symbol()).second) list.tickers.push_back(std::move(ticker));
    }
    if (list.tickers.empty()) {
        throw EmptyConstituentList("index '" + index_name + "' yielded no symbols");
    }
    return list;
}

}  // namespace stockdata
