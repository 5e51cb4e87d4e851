#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stockdata {

// A parsed CSV document: header row plus data rows. Rows whose field count
// does not match the header are skipped and counted in `skipped_rows`.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::size_t skipped_rows = 0;

    std::optional<std::size_t> column_index(std::string_view name) const;
};

struct CsvOptions {
    // When set, a row with the wrong field count raises CsvParseError
    // instead of being skipped.
    bool strict = false;
};

// RFC 4180 style parsing: quoted fields, "" escapes, CRLF or LF line ends,
// optional trailing newline. The first record is the header.
CsvTable parse_csv(std::string_view text, const CsvOptions& options = {});

// Quotes a field only when it needs it (comma, quote, newline).
std::string csv_escape(std::string_view field);

}  // namespace stockdata
