#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "sciento/growth.hpp"

using namespace sciento;

namespace {

// The ten-year output series of the bundled corpus (fixture total_papers).
const std::map<int, std::int64_t> kSeries = {
    {2008, 527}, {2009, 600},  {2010, 606},  {2011, 678},  {2012, 763},
    {2013, 834}, {2014, 950},  {2015, 1216}, {2016, 1475}, {2017, 2085},
};

// Published RGR rows of the same corpus, quirks and all (the 2008 value is
// a rounding artifact of an identity-zero row; 2011 carries a typo).
std::vector<RgrRow> published_rgr_rows() {
    const std::vector<std::pair<int, double>> printed = {
        {2008, -0.0002}, {2009, 0.6301}, {2010, 1.0511}, {2011, -0.4936}, {2012, 1.4257},
        {2013, 1.5698},  {2014, 1.6525}, {2015, 1.6247}, {2016, 1.6456},  {2017, 1.5405},
    };
    std::vector<RgrRow> rows;
    for (const auto& [year, rgr] : printed) {
        RgrRow row;
        row.year = year;
        row.rgr = rgr;
        if (std::abs(rgr) >= kZeroRgrThreshold) row.doubling_time = doubling_time(rgr);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("annual growth rate is previous output over current output") {
    CHECK(std::abs(annual_growth_rate(527, 600) - 0.878) <= 0.001);
    CHECK(std::abs(annual_growth_rate(1475, 2085) - 0.707) <= 0.001);
    CHECK(annual_growth_rate(42, 42) == 1.0);
    CHECK_THROWS_AS(annual_growth_rate(5, 0), DivisionByZeroError);
}

TEST_CASE("growth table reproduces the published yearly figures") {
    const auto table = growth_table(kSeries);
    REQUIRE(table.rows.size() == 10);
    CHECK_FALSE(table.rows.front().growth_rate.has_value());
    REQUIRE(table.mean_growth_rate.has_value());
    CHECK(std::abs(*table.mean_growth_rate - 0.862) <= 0.001);

    const auto& row2011 = table.rows[3];
    CHECK(row2011.year == 2011);
    CHECK(row2011.cumulative == 2411);
    CHECK(std::abs(row2011.cumulative_share * 100.0 - 24.77) <= 0.01);

    const std::vector<double> printed_rates = {0.878, 0.990, 0.894, 0.889, 0.915,
                                               0.878, 0.781, 0.824, 0.707};
    for (std::size_t i = 0; i < printed_rates.size(); ++i) {
        REQUIRE(table.rows[i + 1].growth_rate.has_value());
        CHECK(std::abs(*table.rows[i + 1].growth_rate - printed_rates[i]) <= 0.001);
    }
}

TEST_CASE("single-year series has no growth rate and no mean") {
    const auto table = growth_table({{1999, 10}});
    REQUIRE(table.rows.size() == 1);
    CHECK_FALSE(table.rows[0].growth_rate.has_value());
    CHECK_FALSE(table.mean_growth_rate.has_value());
    CHECK(table.rows[0].cumulative_share == 1.0);
}

TEST_CASE("zero-output years yield no rate and are skipped by the mean") {
    const auto table = growth_table({{2000, 4}, {2001, 0}, {2002, 8}});
    CHECK_FALSE(table.rows[1].growth_rate.has_value());
    REQUIRE(table.rows[2].growth_rate.has_value());
    CHECK(*table.rows[2].growth_rate == 0.0);  // previous output was zero
    REQUIRE(table.mean_growth_rate.has_value());
    CHECK(*table.mean_growth_rate == 0.0);
}

TEST_CASE("growth table cumulative equals prefix sums on random series") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> years(2, 12);
    std::uniform_int_distribution<std::int64_t> output(1, 5000);
    for (int trial = 0; trial < 100; ++trial) {
        std::map<int, std::int64_t> series;
        const int n = years(rng);
        for (int i = 0; i < n; ++i) series[1990 + i] = output(rng);
        const auto table = growth_table(series);
        std::int64_t prefix = 0;
        for (const auto& row : table.rows) {
            prefix += row.output;
            CHECK(row.cumulative == prefix);
        }
        CHECK(table.rows.back().cumulative_share == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("scaling every output leaves growth rates and paper RGR unchanged") {
    const auto base_growth = growth_table(kSeries);
    const auto base_rgr = relative_growth_rate(kSeries, Variant::paper);
    for (const std::int64_t k : {2, 7}) {
        std::map<int, std::int64_t> scaled;
        for (const auto& [year, output] : kSeries) scaled[year] = output * k;
        const auto growth = growth_table(scaled);
        const auto rgr = relative_growth_rate(scaled, Variant::paper);
        for (std::size_t i = 0; i < growth.rows.size(); ++i) {
            if (growth.rows[i].growth_rate) {
                CHECK(*growth.rows[i].growth_rate
                      == doctest::Approx(*base_growth.rows[i].growth_rate).epsilon(1e-12));
            }
            CHECK(*rgr[i].rgr == doctest::Approx(*base_rgr[i].rgr).epsilon(1e-12));
        }
    }
}

TEST_CASE("paper-variant RGR matches the published rows") {
    const auto rows = relative_growth_rate(kSeries, Variant::paper);
    REQUIRE(rows.size() == 10);
    CHECK(*rows[0].rgr == 0.0);  // identity row; the published -0.0002 is rounding noise
    CHECK_FALSE(rows[0].doubling_time.has_value());
    CHECK(std::abs(*rows[4].rgr - 1.4257) <= 0.001);   // 2012
    CHECK(std::abs(*rows[5].rgr - 1.5698) <= 0.001);   // 2013
    CHECK(std::abs(*rows[5].doubling_time - 0.4415) <= 0.001);
    CHECK(std::abs(*rows[1].doubling_time - 1.0998) <= 0.001);  // 2009
}

TEST_CASE("standard-variant RGR is the cumulative log difference") {
    const auto rows = relative_growth_rate(kSeries, Variant::standard);
    CHECK_FALSE(rows[0].rgr.has_value());
    // Independent evaluation of ln(1127) - ln(527), frozen: 0.7601139654984141.
    CHECK(*rows[1].rgr == doctest::Approx(0.7601139654984141).epsilon(1e-12));
    CHECK(std::abs(*rows[1].rgr - 0.7601) <= 0.0005);
}

TEST_CASE("standard-variant RGR telescopes over any window") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::int64_t> output(1, 900);
    std::map<int, std::int64_t> series;
    for (int i = 0; i < 9; ++i) series[2000 + i] = output(rng);
    const auto rows = relative_growth_rate(series, Variant::standard);
    double sum = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) sum += *rows[i].rgr;
    CHECK(sum == doctest::Approx(rows.back().log_cumulative - rows.front().log_cumulative)
                     .epsilon(1e-12));
}

TEST_CASE("relative growth rate needs positive outputs") {
    CHECK_THROWS_AS(relative_growth_rate({{2000, 5}, {2001, 0}}, Variant::paper),
                    NonPositiveOutputError);
}

TEST_CASE("doubling time is 0.693 over the rate") {
    CHECK(std::abs(doubling_time(1.5698) - 0.4414) <= 0.001);
    CHECK(std::abs(doubling_time(0.6301) - 1.0998) <= 0.001);
    CHECK(doubling_time(0.693) == 1.0);
    CHECK_THROWS_AS(doubling_time(0.0), UndefinedDoublingTimeError);
}

TEST_CASE("doubling time times rate is exactly the numerator") {
    const auto rows = relative_growth_rate(kSeries, Variant::paper);
    for (const auto& row : rows) {
        if (!row.doubling_time) continue;
        CHECK(*row.doubling_time * *row.rgr == doctest::Approx(0.693).epsilon(1e-15));
    }
}

TEST_CASE("period means over the published rows reproduce the printed summary") {
    const auto rows = published_rgr_rows();
    const std::vector<YearRange> periods = {{2008, 2012}, {2013, 2017}};
    const auto means = period_means(rows, periods, Variant::paper);
    REQUIRE(means.periods.size() == 2);
    REQUIRE(means.periods[0].mean_rgr.has_value());
    CHECK(*means.periods[0].mean_rgr == doctest::Approx(0.52262).epsilon(1e-12));
    CHECK(*means.periods[1].mean_rgr == doctest::Approx(1.60662).epsilon(1e-12));
    REQUIRE(means.periods[0].mean_dt.has_value());
    CHECK(std::abs(*means.periods[0].mean_dt - 0.912275) <= 0.0005);
    CHECK(std::abs(*means.periods[1].mean_dt - 0.43168) <= 0.0005);
    REQUIRE(means.grand_mean_dt.has_value());
    CHECK(std::abs(*means.grand_mean_dt - 0.6719775) <= 0.0005);
}

TEST_CASE("period means validate their ranges") {
    const auto rows = published_rgr_rows();
    const std::vector<YearRange> gap = {{2008, 2012}, {2014, 2017}};
    CHECK_THROWS_AS(period_means(rows, gap, Variant::paper), EmptyPeriodError);
    const std::vector<YearRange> empty_tail = {{2008, 2017}, {2018, 2020}};
    CHECK_THROWS_AS(period_means(rows, empty_tail, Variant::paper), EmptyPeriodError);
}

TEST_CASE("a period holding only undefined rows has no mean rgr") {
    const auto rows = relative_growth_rate({{2014, 12}, {2015, 4}}, Variant::standard);
    const std::vector<YearRange> periods = {{2014, 2014}, {2015, 2015}};
    const auto means = period_means(rows, periods, Variant::standard);
    CHECK_FALSE(means.periods[0].mean_rgr.has_value());
    REQUIRE(means.periods[1].mean_rgr.has_value());
    CHECK(*means.periods[1].mean_rgr == doctest::Approx(*rows[1].rgr));
}
