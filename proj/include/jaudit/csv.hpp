#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "jaudit/errors.hpp"

namespace jaudit::csv {

struct Row {
    std::vector<std::string> cells;
    long line = 0; // 1-based line where the row started
};

// RFC-4180-ish reader: quoted cells may contain commas, escaped quotes
// ("") and newlines. Returns all rows including the header.
inline std::vector<Row> read(std::istream& in) {
    std::vector<Row> rows;
    Row row;
    std::string cell;
    bool in_quotes = false;
    bool row_started = false;
    long line = 1;
    row.line = 1;
    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    cell.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                cell.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                row.cells.push_back(std::move(cell));
                cell.clear();
                row_started = true;
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                if (row_started || !cell.empty()) {
                    row.cells.push_back(std::move(cell));
                    cell.clear();
                    rows.push_back(std::move(row));
                    row = Row{};
                }
                row.line = line;
                row_started = false;
                break;
            default:
                cell.push_back(c);
                row_started = true;
                break;
        }
    }
    if (in_quotes)
        throw ParseError("csv: unterminated quoted cell starting near line " + std::to_string(row.line));
    if (row_started || !cell.empty()) {
        row.cells.push_back(std::move(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << escape(cells[i]);
    }
    os << '\n';
}

} // namespace jaudit::csv
