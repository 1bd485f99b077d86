#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sciento/aggregate.hpp"

using namespace sciento;

namespace {

PublicationRecord record(int year, std::vector<std::string> authors) {
    return {year, std::move(authors), ""};
}

std::vector<PublicationRecord> synthetic_corpus(std::mt19937& rng, int max_records) {
    std::uniform_int_distribution<int> n_records(1, max_records);
    std::uniform_int_distribution<int> year(2000, 2005);
    std::uniform_int_distribution<int> byline(1, 14);
    std::uniform_int_distribution<int> author_id(0, 30);
    std::vector<PublicationRecord> records;
    const int n = n_records(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> authors;
        const int m = byline(rng);
        for (int j = 0; j < m; ++j) {
            authors.push_back("author " + std::to_string(author_id(rng)));
        }
        records.push_back(record(year(rng), std::move(authors)));
    }
    return records;
}

}  // namespace

TEST_CASE("authorship matrix buckets by byline size") {
    std::vector<PublicationRecord> records = {
        record(2008, {"A"}),
        record(2008, {"A", "B"}),
        record(2008, {"C", "D"}),
    };
    const auto matrix = build_authorship_matrix(records);
    const auto& row = matrix.years.at(2008);
    CHECK(row.buckets[0] == 1);
    CHECK(row.buckets[1] == 2);
    CHECK(row.bucketed_papers() == 3);
    CHECK(row.total_authors == 5);
    CHECK(row.over10 == 0);
}

TEST_CASE("bylines above ten authors count separately") {
    std::vector<std::string> big;
    for (int i = 0; i < 11; ++i) big.push_back("author " + std::to_string(i));
    std::vector<PublicationRecord> records = {record(2010, big), record(2010, {"A"})};
    const auto matrix = build_authorship_matrix(records);
    const auto& row = matrix.years.at(2010);
    CHECK(row.over10 == 1);
    CHECK(row.bucketed_papers() == 1);
    CHECK(row.total_authors == 1);  // the big byline is not part of the bucketed population
}

TEST_CASE("matrix conservation: bucketed plus over10 equals record count") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto records = synthetic_corpus(rng, 50);
        const auto matrix = build_authorship_matrix(records);
        CHECK(matrix.total_bucketed_papers() + matrix.total_over10()
              == static_cast<std::int64_t>(records.size()));
    }
}

TEST_CASE("matrix is order independent") {
    std::mt19937 rng(11);
    auto records = synthetic_corpus(rng, 40);
    const auto matrix = build_authorship_matrix(records);
    std::shuffle(records.begin(), records.end(), rng);
    CHECK(build_authorship_matrix(records) == matrix);
}

TEST_CASE("productivity histogram uses full counting") {
    SUBCASE("one author, two papers") {
        std::vector<PublicationRecord> records = {record(2001, {"A"}), record(2002, {"A"})};
        const auto hist = build_productivity_histogram(records);
        CHECK(hist.bins[1] == HistogramBin{2, 1});
        CHECK(hist.total_authors() == 1);
    }
    SUBCASE("co-author credit is one per paper") {
        std::vector<PublicationRecord> records = {record(2001, {"A", "B"}), record(2002, {"A"})};
        const auto hist = build_productivity_histogram(records);
        CHECK(hist.bins[0] == HistogramBin{1, 1});  // B
        CHECK(hist.bins[1] == HistogramBin{2, 1});  // A
    }
    SUBCASE("duplicate byline entries credit once") {
        std::vector<PublicationRecord> records = {record(2001, {"A", " a "})};
        const auto hist = build_productivity_histogram(records);
        CHECK(hist.bins[0] == HistogramBin{1, 1});
    }
}

TEST_CASE("histogram top bucket folds by default and exactly when disabled") {
    std::vector<PublicationRecord> records;
    for (int i = 0; i < 12; ++i) records.push_back(record(2000 + i, {"prolific"}));
    records.push_back(record(2000, {"casual"}));

    const auto folded = build_productivity_histogram(records, 10, true);
    CHECK(folded.top_bucket_inclusive);
    CHECK(folded.bins.size() == 10);
    CHECK(folded.bins.back() == HistogramBin{10, 1});

    const auto exact = build_productivity_histogram(records, 10, false);
    CHECK_FALSE(exact.top_bucket_inclusive);
    CHECK(exact.bins.back() == HistogramBin{12, 1});
}

TEST_CASE("full-counting identity: sum of x*y equals distinct author credits") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto records = synthetic_corpus(rng, 50);
        const auto hist = build_productivity_histogram(records, 10, false);
        std::int64_t histogram_credits = 0;
        for (const auto& bin : hist.bins) histogram_credits += bin.papers * bin.authors;
        std::int64_t record_credits = 0;
        for (const auto& r : records) {
            std::set<AuthorKey> distinct;
            for (const auto& name : r.authors) distinct.insert(normalize_author_name(name));
            record_credits += static_cast<std::int64_t>(distinct.size());
        }
        CHECK(histogram_credits == record_credits);
    }
}

TEST_CASE("histogram propagates empty author names") {
    std::vector<PublicationRecord> records = {record(2001, {"  "})};
    CHECK_THROWS_AS(build_productivity_histogram(records), EmptyNameError);
}

TEST_CASE("yearly output series zero-fills interior years") {
    CHECK(yearly_output_series({}).empty());

    std::vector<PublicationRecord> records = {record(2001, {"A"}), record(2001, {"B"}),
                                              record(2001, {"C"}), record(2004, {"D"})};
    const auto series = yearly_output_series(records);
    CHECK(series.size() == 4);
    CHECK(series.at(2001) == 3);
    CHECK(series.at(2002) == 0);
    CHECK(series.at(2003) == 0);
    CHECK(series.at(2004) == 1);
}
