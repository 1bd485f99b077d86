#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "sciento/errors.hpp"

namespace sciento {

/// One bibliographic record: the unit every aggregate is built from.
struct PublicationRecord {
    int year = 0;
    std::vector<std::string> authors;  ///< byline as published, order kept, never empty
    std::string source;                ///< journal / venue title, may be empty

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

/// Inclusive year range accepted at ingest; records outside are rejected
/// with a diagnostic rather than a hard error.
struct YearWindow {
    int min_year = 1900;
    int max_year = 2100;

    bool contains(int year) const { return year >= min_year && year <= max_year; }
};

/// Canonical author identity. Identity is exact string match on the
/// normalized form; no initials merging or disambiguation is attempted.
struct AuthorKey {
    std::string normalized;

    friend auto operator<=>(const AuthorKey&, const AuthorKey&) = default;
};

namespace detail {

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char fold_case(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace detail

/// Trims, collapses runs of internal whitespace to single spaces and
/// case-folds (ASCII; other bytes pass through unchanged). Idempotent.
/// Throws EmptyNameError when nothing is left.
inline AuthorKey normalize_author_name(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (detail::is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(detail::fold_case(c));
    }
    if (out.empty()) {
        throw EmptyNameError("author name is empty after normalization");
    }
    return AuthorKey{std::move(out)};
}

}  // namespace sciento
