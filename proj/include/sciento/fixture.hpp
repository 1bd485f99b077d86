#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sciento/aggregate.hpp"
#include "sciento/errors.hpp"

namespace sciento {

/// One year of pre-aggregated authorship counts.
struct FixtureYear {
    int year = 0;
    std::array<std::int64_t, kMaxAuthorBucket> bucket_counts{};
    std::int64_t over10 = 0;
    std::int64_t total_papers = 0;  ///< bucketed + over10
    /// Authors on bucketed papers. Optional: source tables sometimes carry
    /// an author column that differs from Σ j·bucket_j (their byline counts
    /// were tallied upstream); absent means "derive from the buckets".
    std::optional<std::int64_t> total_authors;

    std::int64_t bucket_sum() const {
        std::int64_t n = 0;
        for (auto b : bucket_counts) n += b;
        return n;
    }
    std::int64_t derived_authors() const {
        std::int64_t n = 0;
        for (int j = 0; j < kMaxAuthorBucket; ++j) n += (j + 1) * bucket_counts[static_cast<std::size_t>(j)];
        return n;
    }
    std::int64_t effective_authors() const { return total_authors.value_or(derived_authors()); }

    friend bool operator==(const FixtureYear&, const FixtureYear&) = default;
};

/// A published relative-growth-rate row kept for reproduction runs.
struct RgrReference {
    int year = 0;
    double rgr = 0.0;

    friend bool operator==(const RgrReference&, const RgrReference&) = default;
};

/// Pre-aggregated corpus: the shape the toolkit consumes when raw records
/// are unavailable (as with license-restricted exports).
struct AggregateFixture {
    std::vector<FixtureYear> years;  ///< ascending by year
    std::vector<HistogramBin> productivity;
    bool top_bucket_inclusive = true;
    std::vector<RgrReference> rgr_reference;  ///< optional reproduction data

    friend bool operator==(const AggregateFixture&, const AggregateFixture&) = default;
};

namespace detail {

inline std::int64_t require_count(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) {
        throw SchemaError("fixture " + where + ": missing key '" + key + "'");
    }
    if (!j[key].is_number_integer()) {
        throw SchemaError("fixture " + where + ": key '" + key + "' is not an integer");
    }
    const auto value = j[key].get<std::int64_t>();
    if (value < 0) {
        throw ConsistencyError("fixture " + where + ": key '" + key + "' is negative");
    }
    return value;
}

}  // namespace detail

/// Loads and validates the aggregate fixture. Structural problems raise
/// SchemaError; count relations that do not add up raise ConsistencyError.
inline AggregateFixture load_aggregate_fixture(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("fixture is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw SchemaError("fixture root must be an object");
    }
    for (const char* key : {"years", "productivity"}) {
        if (!doc.contains(key) || !doc[key].is_array()) {
            throw SchemaError(std::string("fixture: missing array '") + key + "'");
        }
    }
    if (!doc.contains("top_bucket_inclusive") || !doc["top_bucket_inclusive"].is_boolean()) {
        throw SchemaError("fixture: missing boolean 'top_bucket_inclusive'");
    }

    AggregateFixture fixture;
    fixture.top_bucket_inclusive = doc["top_bucket_inclusive"].get<bool>();

    std::set<int> seen_years;
    for (const auto& entry : doc["years"]) {
        if (!entry.is_object() || !entry.contains("year") || !entry["year"].is_number_integer()) {
            throw SchemaError("fixture: year entry without integer 'year'");
        }
        FixtureYear fy;
        fy.year = entry["year"].get<int>();
        const std::string where = "year " + std::to_string(fy.year);
        if (!seen_years.insert(fy.year).second) {
            throw SchemaError("fixture: duplicate " + where);
        }
        if (!entry.contains("bucket_counts") || !entry["bucket_counts"].is_array()
            || entry["bucket_counts"].size() != kMaxAuthorBucket) {
            throw SchemaError("fixture " + where + ": 'bucket_counts' must hold exactly "
                              + std::to_string(kMaxAuthorBucket) + " counts");
        }
        for (std::size_t j = 0; j < kMaxAuthorBucket; ++j) {
            const auto& cell = entry["bucket_counts"][j];
            if (!cell.is_number_integer()) {
                throw SchemaError("fixture " + where + ": bucket count is not an integer");
            }
            fy.bucket_counts[j] = cell.get<std::int64_t>();
            if (fy.bucket_counts[j] < 0) {
                throw ConsistencyError("fixture " + where + ": negative bucket count");
            }
        }
        fy.over10 = detail::require_count(entry, "over10", where);
        fy.total_papers = detail::require_count(entry, "total_papers", where);
        if (entry.contains("total_authors")) {
            fy.total_authors = detail::require_count(entry, "total_authors", where);
        }
        if (fy.bucket_sum() + fy.over10 != fy.total_papers) {
            throw ConsistencyError("fixture " + where + ": bucket counts (" + std::to_string(fy.bucket_sum())
                                   + ") plus over10 (" + std::to_string(fy.over10)
                                   + ") do not equal total_papers (" + std::to_string(fy.total_papers) + ")");
        }
        if (fy.total_authors && *fy.total_authors < fy.bucket_sum()) {
            throw ConsistencyError("fixture " + where + ": total_authors below bucketed paper count");
        }
        fixture.years.push_back(fy);
    }
    std::sort(fixture.years.begin(), fixture.years.end(),
              [](const FixtureYear& a, const FixtureYear& b) { return a.year < b.year; });

    std::int64_t prev_x = 0;
    for (const auto& entry : doc["productivity"]) {
        if (!entry.is_object()) {
            throw SchemaError("fixture: productivity entry is not an object");
        }
        HistogramBin bin;
        bin.papers = detail::require_count(entry, "x", "productivity");
        bin.authors = detail::require_count(entry, "y", "productivity");
        if (bin.papers < 1) {
            throw SchemaError("fixture: productivity x must be at least 1");
        }
        if (bin.papers <= prev_x) {
            throw SchemaError("fixture: productivity x values must be unique and ascending (x="
                              + std::to_string(bin.papers) + ")");
        }
        prev_x = bin.papers;
        fixture.productivity.push_back(bin);
    }

    if (doc.contains("rgr_reference")) {
        if (!doc["rgr_reference"].is_array()) {
            throw SchemaError("fixture: 'rgr_reference' must be an array");
        }
        std::set<int> seen;
        for (const auto& entry : doc["rgr_reference"]) {
            if (!entry.is_object() || !entry.contains("year") || !entry["year"].is_number_integer()
                || !entry.contains("rgr") || !entry["rgr"].is_number()) {
                throw SchemaError("fixture: rgr_reference entries need integer 'year' and numeric 'rgr'");
            }
            RgrReference ref{entry["year"].get<int>(), entry["rgr"].get<double>()};
            if (!seen.insert(ref.year).second) {
                throw SchemaError("fixture: duplicate rgr_reference year " + std::to_string(ref.year));
            }
            fixture.rgr_reference.push_back(ref);
        }
        std::sort(fixture.rgr_reference.begin(), fixture.rgr_reference.end(),
                  [](const RgrReference& a, const RgrReference& b) { return a.year < b.year; });
    }
    return fixture;
}

/// Inverse of load_aggregate_fixture; the output parses back to an equal
/// fixture.
inline std::string serialize_aggregate_fixture(const AggregateFixture& fixture) {
    nlohmann::ordered_json doc;
    doc["years"] = nlohmann::ordered_json::array();
    for (const auto& fy : fixture.years) {
        nlohmann::ordered_json entry;
        entry["year"] = fy.year;
        entry["bucket_counts"] = fy.bucket_counts;
        entry["over10"] = fy.over10;
        entry["total_papers"] = fy.total_papers;
        if (fy.total_authors) {
            entry["total_authors"] = *fy.total_authors;
        }
        doc["years"].push_back(std::move(entry));
    }
    doc["productivity"] = nlohmann::ordered_json::array();
    for (const auto& bin : fixture.productivity) {
        doc["productivity"].push_back({{"x", bin.papers}, {"y", bin.authors}});
    }
    doc["top_bucket_inclusive"] = fixture.top_bucket_inclusive;
    if (!fixture.rgr_reference.empty()) {
        doc["rgr_reference"] = nlohmann::ordered_json::array();
        for (const auto& ref : fixture.rgr_reference) {
            doc["rgr_reference"].push_back({{"year", ref.year}, {"rgr", ref.rgr}});
        }
    }
    return doc.dump(2) + "\n";
}

inline AuthorshipMatrix matrix_from_fixture(const AggregateFixture& fixture) {
    AuthorshipMatrix matrix;
    for (const auto& fy : fixture.years) {
        YearAuthorship row;
        row.buckets = fy.bucket_counts;
        row.over10 = fy.over10;
        row.total_authors = fy.effective_authors();
        matrix.years[fy.year] = row;
    }
    return matrix;
}

inline ProductivityHistogram histogram_from_fixture(const AggregateFixture& fixture) {
    return ProductivityHistogram{fixture.productivity, fixture.top_bucket_inclusive};
}

/// Year → paper count, over10 papers included (they are publications even
/// though the bucketed metrics exclude them).
inline std::map<int, std::int64_t> yearly_series_from_fixture(const AggregateFixture& fixture) {
    std::map<int, std::int64_t> series;
    for (const auto& fy : fixture.years) {
        series[fy.year] = fy.total_papers;
    }
    return series;
}

}  // namespace sciento
