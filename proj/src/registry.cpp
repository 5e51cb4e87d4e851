#include "stockdata/registry.hpp"

#include "stockdata/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace stockdata {

SourceRegistry builtin_sources() {
    SourceRegistry registry;
    registry["sp500"] = IndexSource{
        .kind = SourceKind::HtmlTable,
        .locator = "https://en.wikipedia.org/wiki/List_of_S%26P_500_companies",
        .column = "Symbol",
        .table_hint = 0,
    };
    registry["nasdaq100"] = IndexSource{
        .kind = SourceKind::HtmlTable,
        .locator = "https://en.wikipedia.org/wiki/Nasdaq-100",
        .column = "Ticker",
        .table_hint = 4,
    };
    registry["nasdaq-all"] = IndexSource{
        .kind = SourceKind::RemoteCsv,
        .locator = "https://datahub.io/core/nasdaq-listings/r/nasdaq-listed-symbols.csv",
        .column = "Symbol",
        .table_hint = std::nullopt,
    };
    return registry;
}

namespace {

SourceKind parse_kind(const std::string& kind) {
    if (kind == "html") return SourceKind::HtmlTable;
    if (kind == "csv") return SourceKind::RemoteCsv;
    if (kind == "file") return SourceKind::LocalFile;
    if (kind == "inline") return SourceKind::InlineList;
    throw UsageError("unknown source kind '" + kind + "' (expected html, csv, file or inline)");
}

std::string locator_key(SourceKind kind) {
    switch (kind) {
        case SourceKind::HtmlTable:
        case SourceKind::RemoteCsv:
            return "url";
        case SourceKind::LocalFile:
            return "path";
        case SourceKind::InlineList:
            return "symbols";
    }
    return "url";
}

}  // namespace

void merge_sources_file(SourceRegistry& registry, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sources file: " + path.string());

    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("sources file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw UsageError("sources file must be a JSON object of index entries");

    for (const auto& [name, entry] : doc.items()) {
        if (!entry.is_object()) {
            throw UsageError("source '" + name + "' must be a JSON object");
        }
        IndexSource source;
        source.kind = parse_kind(entry.value("kind", "html"));
        std::string key = locator_key(source.kind);
        if (!entry.contains(key) || !entry[key].is_string()) {
            throw UsageError("source '" + name + "' is missing string field '" + key + "'");
        }
        source.locator = entry[key].get<std::string>();
        source.column = entry.value("column", "Symbol");
        if (entry.contains("table")) {
            if (!entry["table"].is_number_integer()) {
                throw UsageError("source '" + name + "': 'table' must be an integer");
            }
            source.table_hint = entry["table"].get<int>();
        }
        registry[name] = std::move(source);
    }
}

}  // namespace stockdata
