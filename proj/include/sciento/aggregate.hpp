#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "sciento/errors.hpp"
#include "sciento/records.hpp"

namespace sciento {

/// Papers with j authors (j = 1..10) form the bucketed population; larger
/// bylines are tallied separately and excluded from every per-bucket metric.
inline constexpr int kMaxAuthorBucket = 10;

/// One year of the authorship pattern.
struct YearAuthorship {
    std::array<std::int64_t, kMaxAuthorBucket> buckets{};  ///< papers with j authors at index j-1
    std::int64_t over10 = 0;        ///< papers with more than ten authors
    std::int64_t total_authors = 0; ///< sum of byline sizes over bucketed papers

    std::int64_t bucketed_papers() const {
        return std::accumulate(buckets.begin(), buckets.end(), std::int64_t{0});
    }
    std::int64_t single_papers() const { return buckets[0]; }
    std::int64_t multi_papers() const { return bucketed_papers() - buckets[0]; }

    friend bool operator==(const YearAuthorship&, const YearAuthorship&) = default;
};

/// Year-by-year distribution of papers over byline sizes.
struct AuthorshipMatrix {
    std::map<int, YearAuthorship> years;

    std::int64_t total_bucketed_papers() const {
        std::int64_t n = 0;
        for (const auto& [year, row] : years) n += row.bucketed_papers();
        return n;
    }
    std::int64_t total_over10() const {
        std::int64_t n = 0;
        for (const auto& [year, row] : years) n += row.over10;
        return n;
    }
    std::int64_t total_authors() const {
        std::int64_t n = 0;
        for (const auto& [year, row] : years) n += row.total_authors;
        return n;
    }
    std::array<std::int64_t, kMaxAuthorBucket> bucket_totals() const {
        std::array<std::int64_t, kMaxAuthorBucket> totals{};
        for (const auto& [year, row] : years) {
            for (int j = 0; j < kMaxAuthorBucket; ++j) totals[j] += row.buckets[j];
        }
        return totals;
    }

    friend bool operator==(const AuthorshipMatrix&, const AuthorshipMatrix&) = default;
};

/// (papers written, number of authors who wrote that many).
struct HistogramBin {
    std::int64_t papers = 0;
    std::int64_t authors = 0;

    friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

/// Author-productivity distribution: how many authors produced x papers.
struct ProductivityHistogram {
    std::vector<HistogramBin> bins;   ///< ascending unique `papers` values
    bool top_bucket_inclusive = true; ///< top bin also holds everything above it

    std::int64_t total_authors() const {
        std::int64_t n = 0;
        for (const auto& bin : bins) n += bin.authors;
        return n;
    }

    friend bool operator==(const ProductivityHistogram&, const ProductivityHistogram&) = default;
};

/// Buckets each record by byline size for its year. Bylines of more than
/// ten authors only bump the over10 tally; their authors are not added to
/// total_authors.
inline AuthorshipMatrix build_authorship_matrix(std::span<const PublicationRecord> records) {
    AuthorshipMatrix matrix;
    for (const auto& record : records) {
        auto& row = matrix.years[record.year];
        const auto n = static_cast<std::int64_t>(record.authors.size());
        if (n == 0) {
            throw InvalidCountsError("record without authors");
        }
        if (n > kMaxAuthorBucket) {
            row.over10 += 1;
        } else {
            row.buckets[static_cast<std::size_t>(n - 1)] += 1;
            row.total_authors += n;
        }
    }
    return matrix;
}

/// Counts papers per normalized author (full counting: every distinct
/// co-author of a paper receives one credit), then histograms authors by
/// paper count. Counts above `top_bucket` fold into the top bin unless
/// `fold_top` is off, in which case exact counts are kept.
inline ProductivityHistogram build_productivity_histogram(std::span<const PublicationRecord> records,
                                                          std::int64_t top_bucket = 10,
                                                          bool fold_top = true) {
    if (top_bucket < 1) {
        throw InvalidCountsError("top bucket must be at least 1");
    }
    std::map<AuthorKey, std::int64_t> papers_per_author;
    std::set<AuthorKey> byline;
    for (const auto& record : records) {
        byline.clear();
        for (const auto& name : record.authors) {
            byline.insert(normalize_author_name(name));
        }
        for (const auto& key : byline) {
            papers_per_author[key] += 1;
        }
    }

    std::map<std::int64_t, std::int64_t> authors_per_count;
    for (const auto& [key, count] : papers_per_author) {
        const std::int64_t x = fold_top ? std::min(count, top_bucket) : count;
        authors_per_count[x] += 1;
    }

    ProductivityHistogram hist;
    hist.top_bucket_inclusive = fold_top;
    if (fold_top) {
        for (std::int64_t x = 1; x <= top_bucket; ++x) {
            auto it = authors_per_count.find(x);
            hist.bins.push_back({x, it == authors_per_count.end() ? 0 : it->second});
        }
    } else {
        for (const auto& [x, y] : authors_per_count) {
            hist.bins.push_back({x, y});
        }
    }
    return hist;
}

/// Papers per year, zero-filled between the first and last observed year.
inline std::map<int, std::int64_t> yearly_output_series(std::span<const PublicationRecord> records) {
    std::map<int, std::int64_t> series;
    for (const auto& record : records) {
        series[record.year] += 1;
    }
    if (!series.empty()) {
        const int first = series.begin()->first;
        const int last = series.rbegin()->first;
        for (int year = first; year <= last; ++year) {
            series.try_emplace(year, 0);
        }
    }
    return series;
}

}  // namespace sciento
