#pragma once

#include "stockdata/symbols.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace stockdata {

using SourceRegistry = std::map<std::string, IndexSource>;

// Indices the tool knows out of the box: sp500, nasdaq100, nasdaq-all.
SourceRegistry builtin_sources();

// Merges index definitions from a JSON file over `registry`. Entries are
// objects keyed by index name:
//   {"sp500": {"kind": "html", "url": "...", "column": "Symbol", "table": 0}}
// kind is one of html, csv, file, inline; the locator key is url, path, or
// symbols to match. Throws UsageError on malformed definitions and IoError
// when the file cannot be read.
void merge_sources_file(SourceRegistry& registry, const std::filesystem::path& path);

}  // namespace stockdata
