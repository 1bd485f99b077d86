#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sciento/aggregate.hpp"
#include "sciento/errors.hpp"
#include "sciento/variant.hpp"

namespace sciento {

/// Mean byline size: total authors over total papers (no upper bound).
inline double collaborative_index(std::int64_t total_authors, std::int64_t total_papers) {
    if (total_papers == 0) {
        throw DivisionByZeroError("collaborative index undefined for zero papers");
    }
    return static_cast<double>(total_authors) / static_cast<double>(total_papers);
}

/// Fraction of multi-authored papers, in [0, 1].
inline double degree_of_collaboration(std::int64_t single_papers, std::int64_t total_papers) {
    if (total_papers == 0) {
        throw DivisionByZeroError("degree of collaboration undefined for zero papers");
    }
    if (single_papers > total_papers || single_papers < 0) {
        throw InvalidCountsError("single-authored papers must be between 0 and the total");
    }
    return static_cast<double>(total_papers - single_papers) / static_cast<double>(total_papers);
}

/// Byline-size class for the co-authorship index.
enum class AuthorBracket {
    single,         ///< exactly one author
    two,            ///< exactly two authors
    three_or_four,  ///< three or four authors
    five_plus,      ///< five to ten authors
    multi,          ///< two or more authors
};

namespace detail {

inline std::int64_t bracket_count(const YearAuthorship& row, AuthorBracket bracket) {
    switch (bracket) {
        case AuthorBracket::single: return row.buckets[0];
        case AuthorBracket::two: return row.buckets[1];
        case AuthorBracket::three_or_four: return row.buckets[2] + row.buckets[3];
        case AuthorBracket::five_plus: {
            std::int64_t n = 0;
            for (std::size_t j = 4; j < row.buckets.size(); ++j) n += row.buckets[j];
            return n;
        }
        case AuthorBracket::multi: return row.multi_papers();
    }
    return 0;
}

}  // namespace detail

/// Year i's share of papers in the byline class relative to the corpus-wide
/// share, scaled so 100 marks the corpus average:
///   100 · (N_ij / N_io) / (N_oj / N_oo).
inline std::map<int, double> co_authorship_index(const AuthorshipMatrix& matrix,
                                                 AuthorBracket bracket) {
    std::int64_t class_total = 0;
    std::int64_t grand_total = 0;
    for (const auto& [year, row] : matrix.years) {
        class_total += detail::bracket_count(row, bracket);
        grand_total += row.bucketed_papers();
    }
    if (class_total == 0) {
        throw EmptyClassError("no papers fall in the requested byline class");
    }
    const double corpus_share = static_cast<double>(class_total) / static_cast<double>(grand_total);

    std::map<int, double> index;
    for (const auto& [year, row] : matrix.years) {
        const std::int64_t papers = row.bucketed_papers();
        if (papers == 0) {
            throw DivisionByZeroError("co-authorship index undefined for a year with no papers");
        }
        const double year_share =
            static_cast<double>(detail::bracket_count(row, bracket)) / static_cast<double>(papers);
        index[year] = 100.0 * year_share / corpus_share;
    }
    return index;
}

/// Collaboration coefficient: 1 − (Σ_j f_j / j) / N, where f_j is the
/// number of papers with j authors (team_size_counts[j-1]). standard takes
/// N = all papers; paper divides by the multi-authored count only, the
/// convention reproduced tables were computed with.
inline double collaboration_coefficient(std::span<const std::int64_t> team_size_counts,
                                        Variant variant) {
    if (team_size_counts.empty()) {
        throw InvalidCountsError("collaboration coefficient needs at least one team-size count");
    }
    double inverse_sum = 0.0;
    std::int64_t total = 0;
    std::int64_t multi = 0;
    for (std::size_t j = 0; j < team_size_counts.size(); ++j) {
        const std::int64_t f = team_size_counts[j];
        if (f < 0) {
            throw InvalidCountsError("negative team-size count");
        }
        inverse_sum += static_cast<double>(f) / static_cast<double>(j + 1);
        total += f;
        if (j > 0) multi += f;
    }
    const std::int64_t population = variant == Variant::paper ? multi : total;
    if (population == 0) {
        throw DivisionByZeroError(variant == Variant::paper
                                      ? "paper-variant CC undefined without multi-authored papers"
                                      : "CC undefined for an empty paper set");
    }
    return 1.0 - inverse_sum / static_cast<double>(population);
}

/// CC rescaled by A/(A−1) so a fully collaborative set can reach 1. The
/// scaling population A follows the variant: all papers (standard) or the
/// multi-authored count (paper).
inline double modified_collaboration_coefficient(std::span<const std::int64_t> team_size_counts,
                                                 Variant variant) {
    const double cc = collaboration_coefficient(team_size_counts, variant);
    std::int64_t total = 0;
    std::int64_t multi = 0;
    for (std::size_t j = 0; j < team_size_counts.size(); ++j) {
        total += team_size_counts[j];
        if (j > 0) multi += team_size_counts[j];
    }
    const std::int64_t scaling = variant == Variant::paper ? multi : total;
    if (scaling <= 1) {
        throw DegenerateScalingError("MCC scaling population must exceed 1");
    }
    return static_cast<double>(scaling) / static_cast<double>(scaling - 1) * cc;
}

/// Mean byline size over the bucketed corpus.
inline double average_authors_per_paper(const AuthorshipMatrix& matrix) {
    const std::int64_t papers = matrix.total_bucketed_papers();
    if (papers == 0) {
        throw DivisionByZeroError("average authors per paper undefined for an empty matrix");
    }
    return static_cast<double>(matrix.total_authors()) / static_cast<double>(papers);
}

/// One year of collaboration indicators.
struct CollabRow {
    int year = 0;
    std::int64_t papers = 0;   ///< bucketed papers
    std::int64_t authors = 0;  ///< authors on bucketed papers
    double ci = 0.0;
    double dc = 0.0;
    double cai = 0.0;
    double cc = 0.0;
    double mcc = 0.0;
    double mcc_minus_cc = 0.0;
};

/// Yearly indicator rows plus an unweighted-mean summary row (papers and
/// authors in the summary are grand totals).
struct CollaborationTable {
    std::vector<CollabRow> rows;
    CollabRow summary;
};

inline CollaborationTable collaboration_table(const AuthorshipMatrix& matrix, Variant variant) {
    if (matrix.years.empty()) {
        throw InvalidCountsError("collaboration table needs a non-empty matrix");
    }
    const auto cai_by_year = co_authorship_index(matrix, AuthorBracket::multi);

    CollaborationTable table;
    CollabRow sum{};
    for (const auto& [year, yr] : matrix.years) {
        CollabRow row;
        row.year = year;
        row.papers = yr.bucketed_papers();
        row.authors = yr.total_authors;
        row.ci = collaborative_index(yr.total_authors, row.papers);
        row.dc = degree_of_collaboration(yr.single_papers(), row.papers);
        row.cai = cai_by_year.at(year);
        row.cc = collaboration_coefficient(yr.buckets, variant);
        row.mcc = modified_collaboration_coefficient(yr.buckets, variant);
        row.mcc_minus_cc = row.mcc - row.cc;
        sum.ci += row.ci;
        sum.dc += row.dc;
        sum.cai += row.cai;
        sum.cc += row.cc;
        sum.mcc += row.mcc;
        sum.mcc_minus_cc += row.mcc_minus_cc;
        table.rows.push_back(row);
    }
    const auto n = static_cast<double>(table.rows.size());
    table.summary.year = 0;
    table.summary.papers = matrix.total_bucketed_papers();
    table.summary.authors = matrix.total_authors();
    table.summary.ci = sum.ci / n;
    table.summary.dc = sum.dc / n;
    table.summary.cai = sum.cai / n;
    table.summary.cc = sum.cc / n;
    table.summary.mcc = sum.mcc / n;
    table.summary.mcc_minus_cc = sum.mcc_minus_cc / n;
    return table;
}

}  // namespace sciento
