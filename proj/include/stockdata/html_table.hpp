#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stockdata {

// One <table> element reduced to text. The table's first row supplies the
// column names; every later row is data. Cell text has nested markup
// (links, footnote superscripts, line breaks) flattened to plain text,
// entities decoded, and whitespace collapsed and trimmed.
struct HtmlTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// Returns every <table> in document order, nested tables included (a nested
// table is its own entry and does not leak text into the enclosing cell).
// A document with no tables yields an empty vector. Throws MalformedHtml on
// input that cannot be tokenized (e.g. a tag left open at end of input).
std::vector<HtmlTable> extract_tables(std::string_view html);

}  // namespace stockdata
