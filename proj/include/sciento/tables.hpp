#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace sciento {

/// Fixed-point formatting with a stable locale-free rendering; every table
/// cell goes through here so repeated runs emit identical bytes.
inline std::string format_fixed(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
    return buffer;
}

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline std::string to_markdown(const Table& table) {
    std::string out;
    out += "## " + table.name + "\n\n";
    out += "|";
    for (const auto& column : table.columns) {
        out += " " + column + " |";
    }
    out += "\n|";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += " --- |";
    }
    out += "\n";
    for (const auto& row : table.rows) {
        out += "|";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out += " " + (i < row.size() ? row[i] : std::string()) + " |";
        }
        out += "\n";
    }
    out += "\n";
    return out;
}

namespace detail {

inline std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        return cell;
    }
    std::string escaped = "\"";
    for (char c : cell) {
        if (c == '"') escaped += "\"\"";
        else escaped.push_back(c);
    }
    escaped += "\"";
    return escaped;
}

}  // namespace detail

inline std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) out += ",";
        out += detail::csv_escape(table.columns[i]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i > 0) out += ",";
            out += detail::csv_escape(i < row.size() ? row[i] : std::string());
        }
        out += "\n";
    }
    return out;
}

}  // namespace sciento
