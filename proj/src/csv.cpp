#include "stockdata/csv.hpp"

#include "stockdata/errors.hpp"

namespace stockdata {

std::optional<std::size_t> CsvTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

CsvTable parse_csv(std::string_view text, const CsvOptions& options) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool record_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(record);
        } else if (record.size() == table.header.size()) {
            table.rows.push_back(std::move(record));
        } else if (options.strict) {
            throw CsvParseError("line " + std::to_string(line) + ": expected " +
                                std::to_string(table.header.size()) + " fields, got " +
                                std::to_string(record.size()));
        } else {
            ++table.skipped_rows;
        }
        record.clear();
        record_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
                if (c == '\n') {
                    ++line;
                }
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                record_started = true;
                break;
            case ',':
                end_field();
                record_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (record_started) {
                    end_record();
                }
                ++line;
                break;
            default:
                field.push_back(c);
                record_started = true;
                break;
        }
    }
    if (in_quotes) {
        throw CsvParseError("unterminated quoted field at end of input");
    }
    if (record_started) {
        end_record();
    }
    return table;
}

std::string csv_escape(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace stockdata
