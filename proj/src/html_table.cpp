#include "stockdata/html_table.hpp"

#include "stockdata/errors.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace stockdata {

namespace {

char to_lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), to_lower);
    return out;
}

// Named entities seen in the pages we scrape; numeric forms are handled
// separately. Unknown entities pass through verbatim.
const std::unordered_map<std::string, std::string>& named_entities() {
    static const std::unordered_map<std::string, std::string> map = {
        {"amp", "&"},   {"lt", "<"},     {"gt", ">"},    {"quot", "\""},
        {"apos", "'"},  {"nbsp", " "},   {"ndash", "-"}, {"mdash", "-"},
        {"rsquo", "'"}, {"lsquo", "'"},  {"hellip", "..."},
    };
    return map;
}

void append_codepoint(std::string& out, unsigned long cp) {
    if (cp == 0xA0) {  // non-breaking space folds into plain whitespace
        out.push_back(' ');
        return;
    }
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Parses the NNN of &#NNN; or &#xHH;. Returns 0 on malformed input.
unsigned long parse_numeric_entity(std::string_view body) {
    unsigned long cp = 0;
    if (body.size() > 1 && (body[1] == 'x' || body[1] == 'X')) {
        if (body.size() == 2) {
            return 0;
        }
        for (size_t k = 2; k < body.size(); ++k) {
            const char c = to_lower(body[k]);
            if (std::isdigit(static_cast<unsigned char>(c))) {
                cp = cp * 16 + static_cast<unsigned long>(c - '0');
            } else if (c >= 'a' && c <= 'f') {
                cp = cp * 16 + static_cast<unsigned long>(c - 'a' + 10);
            } else {
                return 0;
            }
        }
        return cp;
    }
    if (body.size() == 1) {
        return 0;
    }
    for (size_t k = 1; k < body.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(body[k]))) {
            return 0;
        }
        cp = cp * 10 + static_cast<unsigned long>(body[k] - '0');
    }
    return cp;
}

// Decodes &name;, &#NNN; and &#xHH; sequences in a text run.
std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        const size_t semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(text[i++]);
            continue;
        }
        const std::string_view body = text.substr(i + 1, semi - i - 1);
        if (!body.empty() && body[0] == '#') {
            const unsigned long cp = parse_numeric_entity(body);
            if (cp > 0 && cp <= 0x10FFFF) {
                append_codepoint(out, cp);
                i = semi + 1;
                continue;
            }
        } else {
            auto it = named_entities().find(std::string(body));
            if (it != named_entities().end()) {
                out += it->second;
                i = semi + 1;
                continue;
            }
        }
        out.push_back(text[i++]);
    }
    return out;
}

// Collapses whitespace runs to single spaces and trims both ends.
std::string clean_cell(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
        } else {
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.push_back(c);
        }
    }
    return out;
}

struct TableBuilder {
    size_t slot = 0;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool in_cell = false;
    bool row_open = false;
};

struct Tag {
    std::string name;
    bool closing = false;
    size_t end = 0;  // index just past '>'
};

// Reads one tag starting at html[pos] == '<'. Attribute values may contain
// '>' inside quotes.
Tag read_tag(std::string_view html, size_t pos) {
    Tag tag;
    size_t i = pos + 1;
    if (i < html.size() && html[i] == '/') {
        tag.closing = true;
        ++i;
    }
    while (i < html.size() &&
           (std::isalnum(static_cast<unsigned char>(html[i])) || html[i] == '-')) {
        tag.name.push_back(to_lower(html[i]));
        ++i;
    }
    char quote = 0;
    while (i < html.size()) {
        const char c = html[i];
        if (quote != 0) {
            if (c == quote) {
                quote = 0;
            }
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            tag.end = i + 1;
            return tag;
        }
        ++i;
    }
    throw MalformedHtml("tag opened at byte " + std::to_string(pos) +
                        " is never closed");
}

}  // namespace

std::vector<HtmlTable> extract_tables(std::string_view html) {
    std::vector<HtmlTable> out;
    std::vector<TableBuilder> stack;

    auto flush_cell = [](TableBuilder& b) {
        if (b.in_cell) {
            b.row.push_back(clean_cell(b.cell));
            b.cell.clear();
            b.in_cell = false;
        }
    };
    auto flush_row = [&flush_cell](TableBuilder& b) {
        flush_cell(b);
        if (b.row_open) {
            b.rows.push_back(std::move(b.row));
            b.row.clear();
            b.row_open = false;
        }
    };
    auto finalize = [&out, &flush_row](TableBuilder& b) {
        flush_row(b);
        HtmlTable table;
        if (!b.rows.empty()) {
            table.columns = std::move(b.rows.front());
            table.rows.assign(std::make_move_iterator(b.rows.begin() + 1),
                              std::make_move_iterator(b.rows.end()));
        }
        out[b.slot] = std::move(table);
    };

    size_t i = 0;
    const size_t n = html.size();
    while (i < n) {
        if (html[i] != '<') {
            const size_t next = html.find('<', i);
            const size_t stop = next == std::string_view::npos ? n : next;
            if (!stack.empty() && stack.back().in_cell) {
                stack.back().cell += decode_entities(html.substr(i, stop - i));
            }
            i = stop;
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            const size_t close = html.find("-->", i + 4);
            i = close == std::string_view::npos ? n : close + 3;
            continue;
        }
        if (i + 1 < n && (html[i + 1] == '!' || html[i + 1] == '?')) {
            const size_t close = html.find('>', i);
            if (close == std::string_view::npos) {
                throw MalformedHtml("declaration at byte " + std::to_string(i) +
                                    " is never closed");
            }
            i = close + 1;
            continue;
        }
        if (i + 1 >= n ||
            (!std::isalpha(static_cast<unsigned char>(html[i + 1])) && html[i + 1] != '/')) {
            // A lone '<' in text.
            if (!stack.empty() && stack.back().in_cell) {
                stack.back().cell.push_back('<');
            }
            ++i;
            continue;
        }

        const Tag tag = read_tag(html, i);
        i = tag.end;

        if (!tag.closing && (tag.name == "script" || tag.name == "style")) {
            const std::string close = "</" + tag.name;
            const size_t at = lower_copy(html.substr(i)).find(close);
            if (at == std::string::npos) {
                i = n;
            } else {
                const size_t gt = html.find('>', i + at);
                i = gt == std::string_view::npos ? n : gt + 1;
            }
            continue;
        }

        if (tag.name == "table") {
            if (!tag.closing) {
                TableBuilder builder;
                builder.slot = out.size();
                out.emplace_back();
                stack.push_back(std::move(builder));
            } else if (!stack.empty()) {
                finalize(stack.back());
                stack.pop_back();
            }
            continue;
        }
        if (stack.empty()) {
            continue;
        }
        TableBuilder& top = stack.back();
        if (tag.name == "tr") {
            if (tag.closing) {
                flush_row(top);
            } else {
                flush_row(top);  // implicit close of a dangling row
                top.row_open = true;
            }
        } else if (tag.name == "td" || tag.name == "th") {
            if (tag.closing) {
                flush_cell(top);
            } else {
                flush_cell(top);
                if (!top.row_open) {
                    top.row_open = true;
                }
                top.in_cell = true;
            }
        } else if (tag.name == "br" || tag.name == "p" || tag.name == "li") {
            if (top.in_cell) {
                top.cell.push_back(' ');
            }
        }
        // Any other markup inside a cell is flattened: its text content is
        // already being appended to the open cell.
    }

    // Tables left open at end of input are closed leniently.
    while (!stack.empty()) {
        finalize(stack.back());
        stack.pop_back();
    }
    return out;
}

}  // namespace stockdata
