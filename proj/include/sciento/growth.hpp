#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sciento/errors.hpp"
#include "sciento/variant.hpp"

namespace sciento {

/// Doubling-time numerator. Kept at three digits rather than ln 2 so the
/// outputs line up digit-for-digit with the published tables this toolkit
/// reproduces.
inline constexpr double kDoublingNumerator = 0.693;

/// Rows whose RGR prints as 0.000 have no meaningful doubling time and are
/// skipped by the period means.
inline constexpr double kZeroRgrThreshold = 5e-4;

/// Year-over-year growth ratio: previous output over current output. This
/// convention (rather than the increment ratio) is what the reproduced
/// growth tables use; values below 1 mean output grew.
inline double annual_growth_rate(std::int64_t previous_output, std::int64_t current_output) {
    if (current_output == 0) {
        throw DivisionByZeroError("annual growth rate undefined for zero current output");
    }
    return static_cast<double>(previous_output) / static_cast<double>(current_output);
}

struct GrowthRow {
    int year = 0;
    std::int64_t output = 0;
    double share = 0.0;  ///< fraction of the grand total
    std::int64_t cumulative = 0;
    double cumulative_share = 0.0;
    std::optional<double> growth_rate;  ///< absent for the first year
};

struct GrowthTable {
    std::vector<GrowthRow> rows;
    std::int64_t total_output = 0;
    std::optional<double> mean_growth_rate;  ///< mean over defined yearly rates
};

/// Output, shares, cumulative counts and growth rates per year.
inline GrowthTable growth_table(const std::map<int, std::int64_t>& series) {
    GrowthTable table;
    for (const auto& [year, output] : series) {
        table.total_output += output;
    }
    std::int64_t cumulative = 0;
    std::optional<std::int64_t> previous;
    double rate_sum = 0.0;
    int rate_count = 0;
    for (const auto& [year, output] : series) {
        cumulative += output;
        GrowthRow row;
        row.year = year;
        row.output = output;
        row.cumulative = cumulative;
        if (table.total_output > 0) {
            row.share = static_cast<double>(output) / static_cast<double>(table.total_output);
            row.cumulative_share = static_cast<double>(cumulative) / static_cast<double>(table.total_output);
        }
        if (previous && output > 0) {
            row.growth_rate = annual_growth_rate(*previous, output);
            rate_sum += *row.growth_rate;
            ++rate_count;
        }
        previous = output;
        table.rows.push_back(row);
    }
    if (rate_count > 0) {
        table.mean_growth_rate = rate_sum / rate_count;
    }
    return table;
}

/// One year of relative growth. log_output and log_cumulative are the
/// natural logs of the annual and cumulative counts.
struct RgrRow {
    int year = 0;
    std::int64_t output = 0;
    std::int64_t cumulative = 0;
    double log_output = 0.0;
    double log_cumulative = 0.0;
    std::optional<double> rgr;
    std::optional<double> doubling_time;  ///< absent when rgr is absent or zero
};

/// Doubling time for a nonzero relative growth rate.
inline double doubling_time(double rgr) {
    if (rgr == 0.0) {
        throw UndefinedDoublingTimeError("doubling time undefined for zero growth rate");
    }
    return kDoublingNumerator / rgr;
}

/// Relative growth rate per year, natural logs throughout.
///   standard: rgr(t) = ln cumulative(t) − ln cumulative(t−1), first year absent.
///   paper:    rgr(t) = ln cumulative(t) − ln output(t), defined every year
///             (identically 0 in the first year).
/// Every output must be positive.
inline std::vector<RgrRow> relative_growth_rate(const std::map<int, std::int64_t>& series,
                                                Variant variant) {
    std::vector<RgrRow> rows;
    std::int64_t cumulative = 0;
    std::optional<double> previous_log_cumulative;
    for (const auto& [year, output] : series) {
        if (output <= 0) {
            throw NonPositiveOutputError("relative growth rate needs positive output; year "
                                         + std::to_string(year) + " has "
                                         + std::to_string(output));
        }
        cumulative += output;
        RgrRow row;
        row.year = year;
        row.output = output;
        row.cumulative = cumulative;
        row.log_output = std::log(static_cast<double>(output));
        row.log_cumulative = std::log(static_cast<double>(cumulative));
        if (variant == Variant::paper) {
            row.rgr = row.log_cumulative - row.log_output;
        } else if (previous_log_cumulative) {
            row.rgr = row.log_cumulative - *previous_log_cumulative;
        }
        if (row.rgr && *row.rgr != 0.0) {
            row.doubling_time = doubling_time(*row.rgr);
        }
        previous_log_cumulative = row.log_cumulative;
        rows.push_back(row);
    }
    return rows;
}

struct YearRange {
    int first_year = 0;
    int last_year = 0;

    bool contains(int year) const { return year >= first_year && year <= last_year; }
};

struct PeriodMean {
    YearRange range;
    std::optional<double> mean_rgr;  ///< absent when no row in range has a defined rgr
    std::optional<double> mean_dt;
};

struct PeriodMeans {
    std::vector<PeriodMean> periods;
    std::optional<double> grand_mean_dt;  ///< mean of the period means
};

/// Period averages over RGR rows. mean_rgr includes every row with a
/// defined rgr. In the paper variant mean_dt averages |doubling time| and
/// skips rows whose rgr rounds to zero (the first-year identity row);
/// standard takes the plain mean over defined doubling times.
inline PeriodMeans period_means(std::span<const RgrRow> rows, std::span<const YearRange> periods,
                                Variant variant) {
    for (const auto& row : rows) {
        int covered = 0;
        for (const auto& range : periods) {
            if (range.contains(row.year)) ++covered;
        }
        if (covered != 1) {
            throw EmptyPeriodError("periods must cover each row year exactly once (year "
                                   + std::to_string(row.year) + " covered "
                                   + std::to_string(covered) + " times)");
        }
    }

    PeriodMeans result;
    double dt_mean_sum = 0.0;
    int dt_mean_count = 0;
    for (const auto& range : periods) {
        int rows_in_range = 0;
        double rgr_sum = 0.0;
        int rgr_count = 0;
        double dt_sum = 0.0;
        int dt_count = 0;
        for (const auto& row : rows) {
            if (!range.contains(row.year)) continue;
            ++rows_in_range;
            if (row.rgr) {
                rgr_sum += *row.rgr;
                ++rgr_count;
            }
            if (!row.doubling_time) continue;
            if (variant == Variant::paper) {
                if (std::abs(*row.rgr) < kZeroRgrThreshold) continue;
                dt_sum += std::abs(*row.doubling_time);
            } else {
                dt_sum += *row.doubling_time;
            }
            ++dt_count;
        }
        if (rows_in_range == 0) {
            throw EmptyPeriodError("period " + std::to_string(range.first_year) + ".."
                                   + std::to_string(range.last_year) + " holds no rows");
        }
        PeriodMean mean;
        mean.range = range;
        if (rgr_count > 0) {
            mean.mean_rgr = rgr_sum / rgr_count;
        }
        if (dt_count > 0) {
            mean.mean_dt = dt_sum / dt_count;
            dt_mean_sum += *mean.mean_dt;
            ++dt_mean_count;
        }
        result.periods.push_back(mean);
    }
    if (dt_mean_count > 0) {
        result.grand_mean_dt = dt_mean_sum / dt_mean_count;
    }
    return result;
}

}  // namespace sciento
