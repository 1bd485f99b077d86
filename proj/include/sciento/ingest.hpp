#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sciento/errors.hpp"
#include "sciento/records.hpp"

namespace sciento {

/// A skipped or repaired input row. Real exports are dirty; bad rows are
/// reported, not fatal.
struct ParseDiagnostic {
    std::size_t line = 0;  ///< 1-based line number in the input
    std::string message;
};

struct ParseResult {
    std::vector<PublicationRecord> records;
    std::vector<ParseDiagnostic> diagnostics;
};

/// Column mapping for delimited exports.
struct CsvMapping {
    std::string author_column;
    std::string year_column;
    std::string source_column;   ///< empty: no source column
    char author_separator = ';';
};

namespace detail {

inline std::string_view trim_view(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && is_space(s[begin])) ++begin;
    while (end > begin && is_space(s[end - 1])) --end;
    return s.substr(begin, end - begin);
}

inline std::optional<int> parse_year(std::string_view field) {
    const std::string_view t = trim_view(field);
    int year = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), year);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        return std::nullopt;
    }
    return year;
}

/// Splits a byline on `separator`, trims each token, drops empties.
inline std::vector<std::string> split_authors(std::string_view field, char separator) {
    std::vector<std::string> authors;
    std::size_t start = 0;
    while (start <= field.size()) {
        const std::size_t pos = field.find(separator, start);
        const std::string_view token =
            trim_view(field.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                        : pos - start));
        if (!token.empty()) {
            authors.emplace_back(token);
        }
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return authors;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

struct RowShape {
    std::size_t author_index = 0;
    std::size_t year_index = 0;
    std::optional<std::size_t> source_index;
};

/// Shared row-to-record step for both export formats.
inline void append_record(ParseResult& result, const std::vector<std::string_view>& fields,
                          const RowShape& shape, char author_separator, const YearWindow& window,
                          std::size_t line_no) {
    const std::size_t needed = std::max(shape.author_index, shape.year_index);
    if (fields.size() <= needed) {
        result.diagnostics.push_back({line_no, "row has too few columns"});
        return;
    }
    auto authors = split_authors(fields[shape.author_index], author_separator);
    if (authors.empty()) {
        result.diagnostics.push_back({line_no, "row has no authors"});
        return;
    }
    const auto year = parse_year(fields[shape.year_index]);
    if (!year) {
        result.diagnostics.push_back(
            {line_no, "unparseable year '" + std::string(trim_view(fields[shape.year_index])) + "'"});
        return;
    }
    if (!window.contains(*year)) {
        result.diagnostics.push_back({line_no, "year " + std::to_string(*year) + " outside window "
                                                   + std::to_string(window.min_year) + ".."
                                                   + std::to_string(window.max_year)});
        return;
    }
    std::string source;
    if (shape.source_index && *shape.source_index < fields.size()) {
        source = std::string(trim_view(fields[*shape.source_index]));
    }
    result.records.push_back({*year, std::move(authors), std::move(source)});
}

}  // namespace detail

/// Parses a Web of Science tab-delimited export. The first line is a header
/// of field tags; AU holds authors separated by "; ", PY the publication
/// year, SO the source title. Bad rows become diagnostics.
inline ParseResult parse_wos_export(std::istream& in, const YearWindow& window = {}) {
    std::string line;
    if (!std::getline(in, line)) {
        throw MissingColumnError("empty input: no header line");
    }
    line = detail::strip_cr(line);
    const auto header = detail::split_tabs(line);
    detail::RowShape shape;
    bool have_au = false;
    bool have_py = false;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto tag = detail::trim_view(header[i]);
        if (tag == "AU") {
            shape.author_index = i;
            have_au = true;
        } else if (tag == "PY") {
            shape.year_index = i;
            have_py = true;
        } else if (tag == "SO") {
            shape.source_index = i;
        }
    }
    if (!have_au || !have_py) {
        throw MissingColumnError("header lacks required field tags AU and PY");
    }

    ParseResult result;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = detail::strip_cr(line);
        if (detail::trim_view(line).empty()) continue;
        detail::append_record(result, detail::split_tabs(line), shape, ';', window, line_no);
    }
    return result;
}

namespace detail {

/// One RFC-4180 row; quoted fields may contain the delimiter, doubled
/// quotes and line breaks. Returns nullopt at end of input. `line_no` is
/// advanced past every consumed line.
inline std::optional<std::vector<std::string>> read_csv_row(std::istream& in, std::size_t& line_no) {
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    ++line_no;
    line = strip_cr(line);

    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    std::size_t i = 0;
    while (true) {
        if (i >= line.size()) {
            if (in_quotes) {
                // Embedded line break inside a quoted field.
                if (!std::getline(in, line)) break;
                ++line_no;
                line = strip_cr(line);
                field.push_back('\n');
                i = 0;
                continue;
            }
            break;
        }
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
        ++i;
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace detail

/// Parses an RFC-4180 CSV with a header row; `mapping` names the author,
/// year and (optionally) source columns. Authors are split on
/// `mapping.author_separator`; separators inside quoted fields never split.
inline ParseResult parse_csv_records(std::istream& in, const CsvMapping& mapping,
                                     const YearWindow& window = {}) {
    std::size_t line_no = 0;
    const auto header = detail::read_csv_row(in, line_no);
    if (!header) {
        throw MissingColumnError("empty input: no header row");
    }

    auto find_column = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header->size(); ++i) {
            if (detail::trim_view((*header)[i]) == name) return i;
        }
        return std::nullopt;
    };

    detail::RowShape shape;
    if (auto idx = find_column(mapping.author_column)) {
        shape.author_index = *idx;
    } else {
        throw MissingColumnError("author column '" + mapping.author_column + "' not in header");
    }
    if (auto idx = find_column(mapping.year_column)) {
        shape.year_index = *idx;
    } else {
        throw MissingColumnError("year column '" + mapping.year_column + "' not in header");
    }
    if (!mapping.source_column.empty()) {
        shape.source_index = find_column(mapping.source_column);
        if (!shape.source_index) {
            throw MissingColumnError("source column '" + mapping.source_column + "' not in header");
        }
    }

    ParseResult result;
    while (auto row = detail::read_csv_row(in, line_no)) {
        if (row->size() == 1 && detail::trim_view((*row)[0]).empty()) continue;
        std::vector<std::string_view> fields(row->begin(), row->end());
        detail::append_record(result, fields, shape, mapping.author_separator, window, line_no);
    }
    return result;
}

}  // namespace sciento
