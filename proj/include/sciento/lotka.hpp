#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sciento/aggregate.hpp"
#include "sciento/errors.hpp"
#include "sciento/variant.hpp"

namespace sciento {

/// Riemann zeta by direct summation of x^(-s) for x = 1..100000 (smallest
/// terms first, fixed order, so results are deterministic) plus the
/// integral tail 100000^(1-s)/(s-1). Absolute error is below 1e-8 for
/// s ≥ 1.8 and still tiny near s = 1.
inline double zeta(double s) {
    if (s <= 1.0) {
        throw DivergentSeriesError("zeta(s) diverges for s <= 1");
    }
    constexpr std::int64_t kTerms = 100000;
    double sum = 0.0;
    for (std::int64_t x = kTerms; x >= 1; --x) {
        sum += std::pow(static_cast<double>(x), -s);
    }
    return sum + std::pow(static_cast<double>(kTerms), 1.0 - s) / (s - 1.0);
}

/// Normalizing constant of the inverse power law: 1/zeta(exponent), so the
/// expected proportions C/x^exponent sum to 1 over x = 1..infinity.
inline double lotka_constant(double exponent) {
    if (exponent <= 1.0) {
        throw DivergentSeriesError("inverse power law has no finite constant for exponent <= 1");
    }
    return 1.0 / zeta(exponent);
}

/// Base-10 log-space sums over the regression points.
struct RegressionSums {
    double log_x = 0.0;
    double log_y = 0.0;
    double log_xy = 0.0;
    double log_x_squared = 0.0;
    int points = 0;
};

struct RegressionResult {
    double exponent = 0.0;  ///< sign-flipped slope of the log-log line
    RegressionSums sums;
};

/// Least squares on (log10 x, log10 y) over positive points; exponent is
/// the sign-flipped slope.
inline RegressionResult loglog_least_squares(std::span<const double> x_values,
                                             std::span<const double> y_values) {
    if (x_values.size() != y_values.size()) {
        throw MismatchedSupportError("regression needs as many y values as x values");
    }
    RegressionSums sums;
    for (std::size_t i = 0; i < x_values.size(); ++i) {
        if (x_values[i] <= 0.0 || y_values[i] <= 0.0) {
            throw DegenerateFitError("log-log regression points must be positive");
        }
        const double lx = std::log10(x_values[i]);
        const double ly = std::log10(y_values[i]);
        sums.log_x += lx;
        sums.log_y += ly;
        sums.log_xy += lx * ly;
        sums.log_x_squared += lx * lx;
        sums.points += 1;
    }
    if (sums.points < 2) {
        throw DegenerateFitError("log-log regression needs at least two points");
    }
    const double n = static_cast<double>(sums.points);
    const double denominator = n * sums.log_x_squared - sums.log_x * sums.log_x;
    if (denominator == 0.0) {
        throw DegenerateFitError("log-log regression is degenerate: all x values identical");
    }
    const double slope = (n * sums.log_xy - sums.log_x * sums.log_y) / denominator;
    return RegressionResult{-slope, sums};
}

/// Histogram entry point: zero-count bins carry no information in log
/// space and are dropped before fitting.
inline RegressionResult loglog_least_squares(const ProductivityHistogram& hist) {
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(hist.bins.size());
    ys.reserve(hist.bins.size());
    for (const auto& bin : hist.bins) {
        if (bin.authors <= 0) continue;
        xs.push_back(static_cast<double>(bin.papers));
        ys.push_back(static_cast<double>(bin.authors));
    }
    if (xs.size() < 2) {
        throw DegenerateFitError("log-log regression needs at least two non-empty bins");
    }
    return loglog_least_squares(xs, ys);
}

/// Fitted inverse power law y(x) = C / x^exponent.
struct LotkaFit {
    double exponent = 0.0;
    double constant = 0.0;
    RegressionSums sums;
};

/// Regression plus the theoretical constant for the fitted exponent.
inline LotkaFit fit_lotka(const ProductivityHistogram& hist) {
    const auto regression = loglog_least_squares(hist);
    return LotkaFit{regression.exponent, lotka_constant(regression.exponent), regression.sums};
}

/// Fit record for a hand-picked exponent (the classical inverse square
/// law, or a CLI override); sums stay empty.
inline LotkaFit fixed_exponent_fit(double exponent) {
    return LotkaFit{exponent, lotka_constant(exponent), RegressionSums{}};
}

/// Expected proportion C/x^exponent per x. Deliberately not renormalized
/// over a truncated support, so the values match the infinite-support law.
inline std::vector<double> expected_distribution(double exponent, double constant,
                                                 std::span<const std::int64_t> x_values) {
    std::vector<double> expected;
    expected.reserve(x_values.size());
    for (const auto x : x_values) {
        expected.push_back(constant / std::pow(static_cast<double>(x), exponent));
    }
    return expected;
}

/// One support point of the K-S comparison.
struct KsRow {
    std::int64_t x = 0;
    double observed = 0.0;
    double observed_cum = 0.0;
    double expected = 0.0;
    double expected_cum = 0.0;
    double difference = 0.0;  ///< observed − expected, per x
};

struct KsStatistic {
    std::vector<KsRow> rows;
    double d_max = 0.0;
    std::int64_t d_max_at_x = 0;
};

/// Compares observed author proportions with an expected distribution over
/// the same support. d_max is the largest |observed − expected| across
/// support points; rows also carry both running cumulatives.
inline KsStatistic ks_dmax(const ProductivityHistogram& hist, std::span<const double> expected) {
    if (expected.size() != hist.bins.size()) {
        throw MismatchedSupportError("expected distribution must cover every histogram bin ("
                                     + std::to_string(expected.size()) + " values for "
                                     + std::to_string(hist.bins.size()) + " bins)");
    }
    const std::int64_t total = hist.total_authors();
    if (total <= 0) {
        throw DivisionByZeroError("K-S comparison needs a histogram with authors");
    }
    KsStatistic stat;
    double observed_cum = 0.0;
    double expected_cum = 0.0;
    for (std::size_t i = 0; i < hist.bins.size(); ++i) {
        KsRow row;
        row.x = hist.bins[i].papers;
        row.observed = static_cast<double>(hist.bins[i].authors) / static_cast<double>(total);
        row.expected = expected[i];
        observed_cum += row.observed;
        expected_cum += row.expected;
        row.observed_cum = observed_cum;
        row.expected_cum = expected_cum;
        row.difference = row.observed - row.expected;
        if (std::abs(row.difference) > stat.d_max) {
            stat.d_max = std::abs(row.difference);
            stat.d_max_at_x = row.x;
        }
        stat.rows.push_back(row);
    }
    return stat;
}

/// Critical K-S value. standard uses the large-sample table numerators
/// (1.63 at the 0.01 level, 1.36 at 0.05); paper divides the law's
/// exponent by √n, the convention the reproduced tables print.
inline double ks_critical_value(std::int64_t n, double level, Variant variant,
                                double exponent = 0.0) {
    if (n <= 0) {
        throw InvalidCountsError("critical value needs a positive author count");
    }
    const double root = std::sqrt(static_cast<double>(n));
    if (variant == Variant::paper) {
        return exponent / root;
    }
    if (level == 0.01) return 1.63 / root;
    if (level == 0.05) return 1.36 / root;
    throw InvalidCountsError("supported significance levels are 0.01 and 0.05");
}

enum class KsVerdict { fits, rejected };

inline std::string to_string(KsVerdict verdict) {
    return verdict == KsVerdict::fits ? "fits" : "rejected";
}

/// Full goodness-of-fit record for one law against one histogram.
struct KsResult {
    double exponent = 0.0;
    double constant = 0.0;
    std::vector<KsRow> rows;
    double d_max = 0.0;
    std::int64_t d_max_at_x = 0;
    double critical_value = 0.0;
    double significance_level = 0.0;
    KsVerdict verdict = KsVerdict::rejected;
    /// Share of authors with exactly one paper, for comparison with the
    /// classical "about 60 percent" single-contribution figure.
    double single_author_share = 0.0;
};

/// Assembles expected distribution, D-max, critical value and verdict for
/// the law described by `fit`.
inline KsResult lotka_verdict(const LotkaFit& fit, const ProductivityHistogram& hist, double level,
                              Variant variant) {
    std::vector<std::int64_t> xs;
    xs.reserve(hist.bins.size());
    for (const auto& bin : hist.bins) xs.push_back(bin.papers);
    const auto expected = expected_distribution(fit.exponent, fit.constant, xs);
    auto stat = ks_dmax(hist, expected);

    KsResult result;
    result.exponent = fit.exponent;
    result.constant = fit.constant;
    result.rows = std::move(stat.rows);
    result.d_max = stat.d_max;
    result.d_max_at_x = stat.d_max_at_x;
    result.critical_value = ks_critical_value(hist.total_authors(), level, variant, fit.exponent);
    result.significance_level = level;
    result.verdict = result.d_max <= result.critical_value ? KsVerdict::fits : KsVerdict::rejected;
    const std::int64_t total = hist.total_authors();
    for (const auto& bin : hist.bins) {
        if (bin.papers == 1) {
            result.single_author_share = static_cast<double>(bin.authors) / static_cast<double>(total);
            break;
        }
    }
    return result;
}

}  // namespace sciento
