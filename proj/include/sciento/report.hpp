#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sciento/aggregate.hpp"
#include "sciento/collaboration.hpp"
#include "sciento/errors.hpp"
#include "sciento/fixture.hpp"
#include "sciento/growth.hpp"
#include "sciento/ingest.hpp"
#include "sciento/lotka.hpp"
#include "sciento/tables.hpp"
#include "sciento/variant.hpp"

namespace sciento {

enum class InputKind { fixture, wos, csv };

enum class OutputFormat { markdown, csv, json };

inline OutputFormat output_format_from_string(const std::string& s) {
    if (s == "markdown") return OutputFormat::markdown;
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw InputError("unknown format '" + s + "' (expected csv|markdown|json)");
}

/// Everything one run needs to know.
struct RunConfig {
    InputKind input = InputKind::fixture;
    std::string input_path;
    CsvMapping csv_mapping;
    Variant variant = Variant::standard;  ///< applies to CC/MCC, RGR and the critical value together
    double significance_level = 0.01;
    OutputFormat format = OutputFormat::markdown;
    std::string out_dir;  ///< empty: write to standard output
    YearWindow window;
    std::vector<int> period_starts;  ///< first years of the RGR mean periods; empty: two halves
    std::optional<double> alpha_override;
};

/// Aggregated corpus, however it was obtained.
struct Corpus {
    AuthorshipMatrix matrix;
    ProductivityHistogram histogram;
    std::map<int, std::int64_t> series;       ///< papers per year, over10 included
    std::vector<RgrReference> rgr_reference;  ///< only fixtures can carry this
    std::vector<ParseDiagnostic> diagnostics;
    std::size_t record_count = 0;
};

inline Corpus corpus_from_fixture(const AggregateFixture& fixture) {
    Corpus corpus;
    corpus.matrix = matrix_from_fixture(fixture);
    corpus.histogram = histogram_from_fixture(fixture);
    corpus.series = yearly_series_from_fixture(fixture);
    corpus.rgr_reference = fixture.rgr_reference;
    return corpus;
}

inline Corpus corpus_from_records(std::span<const PublicationRecord> records) {
    Corpus corpus;
    corpus.matrix = build_authorship_matrix(records);
    corpus.histogram = build_productivity_histogram(records);
    corpus.series = yearly_output_series(records);
    corpus.record_count = records.size();
    return corpus;
}

/// Reads and aggregates the configured input file.
inline Corpus load_corpus(const RunConfig& config) {
    std::ifstream in(config.input_path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open input file '" + config.input_path + "'");
    }
    if (config.input == InputKind::fixture) {
        return corpus_from_fixture(load_aggregate_fixture(in));
    }
    ParseResult parsed = config.input == InputKind::wos
                             ? parse_wos_export(in, config.window)
                             : parse_csv_records(in, config.csv_mapping, config.window);
    Corpus corpus = corpus_from_records(parsed.records);
    corpus.diagnostics = std::move(parsed.diagnostics);
    return corpus;
}

/// Reference RGR rows reconstructed from published values: only year, rgr
/// and the derived doubling time are meaningful. Rows whose rgr rounds to
/// zero get no doubling time.
inline std::vector<RgrRow> reference_rgr_rows(std::span<const RgrReference> reference) {
    std::vector<RgrRow> rows;
    for (const auto& ref : reference) {
        RgrRow row;
        row.year = ref.year;
        row.rgr = ref.rgr;
        if (std::abs(ref.rgr) >= kZeroRgrThreshold) {
            row.doubling_time = doubling_time(ref.rgr);
        }
        rows.push_back(row);
    }
    return rows;
}

/// Splits `years` (ascending) into mean periods. With explicit period
/// start years each start opens a period; otherwise the range is halved
/// (first half takes the extra year when the count is odd).
inline std::vector<YearRange> make_periods(const std::vector<int>& years,
                                           const std::vector<int>& period_starts) {
    if (years.empty()) return {};
    std::vector<YearRange> periods;
    if (period_starts.empty()) {
        const std::size_t half = (years.size() + 1) / 2;
        periods.push_back({years.front(), years[half - 1]});
        if (half < years.size()) {
            periods.push_back({years[half], years.back()});
        }
        return periods;
    }
    std::vector<int> starts = period_starts;
    std::sort(starts.begin(), starts.end());
    if (starts.front() > years.front()) {
        starts.insert(starts.begin(), years.front());
    }
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const int first = starts[i];
        const int last = i + 1 < starts.size() ? starts[i + 1] - 1 : years.back();
        periods.push_back({first, last});
    }
    return periods;
}

/// Reproduction block: period means over published RGR rows.
struct ReferenceMeans {
    std::vector<RgrRow> rows;
    PeriodMeans means;
};

/// Every table of one analysis run.
struct ReportBundle {
    Variant variant = Variant::standard;
    double significance_level = 0.01;
    GrowthTable growth;
    AuthorshipMatrix matrix;
    double aapp = 0.0;
    CollaborationTable collaboration;
    LotkaFit fit;
    std::vector<KsResult> ks_runs;  ///< lead run, then the inverse-square companion
    std::vector<RgrRow> rgr_rows;
    std::vector<YearRange> periods;
    PeriodMeans rgr_means;
    std::optional<ReferenceMeans> reference;
};

namespace detail {

/// Reraises module errors with the report table they surfaced in.
template <typename F>
auto in_table(const char* table, F&& f) {
    try {
        return f();
    } catch (const InputError& e) {
        throw InputError(std::string(table) + ": " + e.what());
    } catch (const ComputeError& e) {
        throw ComputeError(std::string(table) + ": " + e.what());
    }
}

}  // namespace detail

inline ReportBundle compute_report(const Corpus& corpus, const RunConfig& config) {
    ReportBundle bundle;
    bundle.variant = config.variant;
    bundle.significance_level = config.significance_level;

    bundle.growth = detail::in_table("growth", [&] { return growth_table(corpus.series); });
    bundle.matrix = corpus.matrix;
    bundle.aapp = detail::in_table("authorship-matrix",
                                   [&] { return average_authors_per_paper(corpus.matrix); });
    bundle.collaboration = detail::in_table(
        "collaboration", [&] { return collaboration_table(corpus.matrix, config.variant); });

    bundle.fit = detail::in_table("lotka-fit", [&] { return fit_lotka(corpus.histogram); });
    detail::in_table("ks", [&] {
        const LotkaFit lead =
            config.alpha_override ? fixed_exponent_fit(*config.alpha_override) : bundle.fit;
        bundle.ks_runs.push_back(
            lotka_verdict(lead, corpus.histogram, config.significance_level, config.variant));
        if (!config.alpha_override) {
            bundle.ks_runs.push_back(lotka_verdict(fixed_exponent_fit(2.0), corpus.histogram,
                                                   config.significance_level, config.variant));
        }
        return 0;
    });

    detail::in_table("rgr-dt", [&] {
        bundle.rgr_rows = relative_growth_rate(corpus.series, config.variant);
        std::vector<int> years;
        for (const auto& [year, output] : corpus.series) years.push_back(year);
        bundle.periods = make_periods(years, config.period_starts);
        bundle.rgr_means = period_means(bundle.rgr_rows, bundle.periods, config.variant);

        if (!corpus.rgr_reference.empty()) {
            ReferenceMeans reference;
            reference.rows = reference_rgr_rows(corpus.rgr_reference);
            std::vector<int> ref_years;
            for (const auto& row : reference.rows) ref_years.push_back(row.year);
            const auto ref_periods = make_periods(ref_years, config.period_starts);
            // Reference rows were published under the legacy conventions,
            // whatever variant this run uses.
            reference.means = period_means(reference.rows, ref_periods, Variant::paper);
            bundle.reference = std::move(reference);
        }
        return 0;
    });
    return bundle;
}

// ---------------------------------------------------------------------------
// JSON rendering (full precision; the CLI's machine-readable surface)
// ---------------------------------------------------------------------------

namespace detail {

using Json = nlohmann::ordered_json;

inline Json optional_number(const std::optional<double>& value) {
    if (value) return *value;
    return nullptr;
}

inline Json growth_json(const GrowthTable& table) {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"year", row.year},
                        {"output", row.output},
                        {"share", row.share},
                        {"cumulative", row.cumulative},
                        {"cumulative_share", row.cumulative_share},
                        {"growth_rate", optional_number(row.growth_rate)}});
    }
    return {{"rows", std::move(rows)},
            {"total_output", table.total_output},
            {"mean_growth_rate", optional_number(table.mean_growth_rate)}};
}

inline Json matrix_json(const AuthorshipMatrix& matrix, double aapp) {
    Json years = Json::array();
    for (const auto& [year, row] : matrix.years) {
        years.push_back({{"year", year},
                         {"bucket_counts", row.buckets},
                         {"bucketed_papers", row.bucketed_papers()},
                         {"over10", row.over10},
                         {"total_authors", row.total_authors}});
    }
    return {{"years", std::move(years)},
            {"bucket_totals", matrix.bucket_totals()},
            {"total_bucketed_papers", matrix.total_bucketed_papers()},
            {"total_over10", matrix.total_over10()},
            {"total_authors", matrix.total_authors()},
            {"aapp", aapp}};
}

inline Json collab_row_json(const CollabRow& row) {
    return {{"year", row.year},
            {"papers", row.papers},
            {"authors", row.authors},
            {"ci", row.ci},
            {"dc", row.dc},
            {"cai", row.cai},
            {"cc", row.cc},
            {"mcc", row.mcc},
            {"mcc_minus_cc", row.mcc_minus_cc}};
}

inline Json collaboration_json(const CollaborationTable& table, Variant variant) {
    Json rows = Json::array();
    for (const auto& row : table.rows) rows.push_back(collab_row_json(row));
    Json summary = collab_row_json(table.summary);
    summary.erase("year");
    return {{"variant", to_string(variant)}, {"rows", std::move(rows)}, {"summary", std::move(summary)}};
}

inline Json fit_json(const LotkaFit& fit, const ProductivityHistogram& hist) {
    Json points = Json::array();
    for (const auto& bin : hist.bins) {
        if (bin.authors <= 0) continue;
        const double lx = std::log10(static_cast<double>(bin.papers));
        const double ly = std::log10(static_cast<double>(bin.authors));
        points.push_back({{"x", bin.papers},
                          {"y", bin.authors},
                          {"log_x", lx},
                          {"log_y", ly},
                          {"log_xy", lx * ly},
                          {"log_x_squared", lx * lx}});
    }
    return {{"points", std::move(points)},
            {"sums",
             {{"log_x", fit.sums.log_x},
              {"log_y", fit.sums.log_y},
              {"log_xy", fit.sums.log_xy},
              {"log_x_squared", fit.sums.log_x_squared},
              {"points", fit.sums.points}}},
            {"exponent", fit.exponent},
            {"constant", fit.constant}};
}

inline Json ks_run_json(const KsResult& run) {
    Json rows = Json::array();
    for (const auto& row : run.rows) {
        rows.push_back({{"x", row.x},
                        {"observed", row.observed},
                        {"observed_cum", row.observed_cum},
                        {"expected", row.expected},
                        {"expected_cum", row.expected_cum},
                        {"difference", row.difference}});
    }
    return {{"exponent", run.exponent},
            {"constant", run.constant},
            {"rows", std::move(rows)},
            {"d_max", run.d_max},
            {"d_max_at_x", run.d_max_at_x},
            {"critical_value", run.critical_value},
            {"significance_level", run.significance_level},
            {"verdict", to_string(run.verdict)},
            {"single_author_share", run.single_author_share}};
}

inline Json ks_json(const std::vector<KsResult>& runs, std::int64_t total_authors) {
    Json out;
    out["n"] = total_authors;
    out["runs"] = Json::array();
    for (const auto& run : runs) out["runs"].push_back(ks_run_json(run));
    return out;
}

inline Json rgr_row_json(const RgrRow& row, bool computed) {
    Json entry;
    entry["year"] = row.year;
    if (computed) {
        entry["output"] = row.output;
        entry["cumulative"] = row.cumulative;
        entry["log_output"] = row.log_output;
        entry["log_cumulative"] = row.log_cumulative;
    }
    entry["rgr"] = optional_number(row.rgr);
    entry["doubling_time"] = optional_number(row.doubling_time);
    return entry;
}

inline Json period_means_json(const PeriodMeans& means) {
    Json periods = Json::array();
    for (const auto& period : means.periods) {
        periods.push_back({{"first_year", period.range.first_year},
                           {"last_year", period.range.last_year},
                           {"mean_rgr", optional_number(period.mean_rgr)},
                           {"mean_dt", optional_number(period.mean_dt)}});
    }
    return {{"periods", std::move(periods)},
            {"grand_mean_dt", optional_number(means.grand_mean_dt)}};
}

inline Json rgr_json(const ReportBundle& bundle) {
    Json rows = Json::array();
    for (const auto& row : bundle.rgr_rows) rows.push_back(rgr_row_json(row, true));
    Json out;
    out["rows"] = std::move(rows);
    out["period_means"] = period_means_json(bundle.rgr_means);
    if (bundle.reference) {
        Json ref_rows = Json::array();
        for (const auto& row : bundle.reference->rows) ref_rows.push_back(rgr_row_json(row, false));
        out["reference"] = {{"rows", std::move(ref_rows)},
                            {"period_means", period_means_json(bundle.reference->means)}};
    }
    return out;
}

}  // namespace detail

/// The whole run as one JSON object; keys mirror the six tables.
inline nlohmann::ordered_json report_json(const ReportBundle& bundle,
                                          const ProductivityHistogram& histogram,
                                          const std::string& source) {
    nlohmann::ordered_json doc;
    doc["source"] = source;
    doc["variant"] = to_string(bundle.variant);
    doc["significance_level"] = bundle.significance_level;
    doc["tables"] = {{"growth", detail::growth_json(bundle.growth)},
                     {"authorship_matrix", detail::matrix_json(bundle.matrix, bundle.aapp)},
                     {"collaboration", detail::collaboration_json(bundle.collaboration, bundle.variant)},
                     {"lotka_fit", detail::fit_json(bundle.fit, histogram)},
                     {"ks", detail::ks_json(bundle.ks_runs, histogram.total_authors())},
                     {"rgr_dt", detail::rgr_json(bundle)}};
    return doc;
}

/// Flat fit-plus-verdict object for the lotka command.
inline nlohmann::ordered_json lotka_json(const ReportBundle& bundle,
                                         const ProductivityHistogram& histogram,
                                         std::optional<double> alpha_override) {
    nlohmann::ordered_json doc;
    const KsResult& lead = bundle.ks_runs.front();
    if (alpha_override) doc["alpha_override"] = *alpha_override;
    doc["exponent"] = lead.exponent;
    doc["constant"] = lead.constant;
    doc["sums"] = {{"log_x", bundle.fit.sums.log_x},
                   {"log_y", bundle.fit.sums.log_y},
                   {"log_xy", bundle.fit.sums.log_xy},
                   {"log_x_squared", bundle.fit.sums.log_x_squared},
                   {"points", bundle.fit.sums.points}};
    doc["n"] = histogram.total_authors();
    doc["dmax"] = lead.d_max;
    doc["dmax_at_x"] = lead.d_max_at_x;
    doc["critical_value"] = lead.critical_value;
    doc["significance_level"] = lead.significance_level;
    doc["verdict"] = to_string(lead.verdict);
    doc["single_author_share"] = lead.single_author_share;
    if (bundle.ks_runs.size() > 1) {
        const KsResult& square = bundle.ks_runs[1];
        doc["inverse_square"] = {{"exponent", square.exponent},
                                 {"constant", square.constant},
                                 {"dmax", square.d_max},
                                 {"dmax_at_x", square.d_max_at_x},
                                 {"critical_value", square.critical_value},
                                 {"verdict", to_string(square.verdict)}};
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Tabular rendering (markdown / csv; fixed display precision)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string opt_cell(const std::optional<double>& value, int decimals) {
    return value ? format_fixed(*value, decimals) : std::string();
}

}  // namespace detail

inline Table growth_as_table(const GrowthTable& growth) {
    Table table{"growth",
                {"year", "output", "share_pct", "cumulative", "cumulative_share_pct", "growth_rate"},
                {}};
    for (const auto& row : growth.rows) {
        table.rows.push_back({std::to_string(row.year), std::to_string(row.output),
                              format_fixed(row.share * 100.0, 2), std::to_string(row.cumulative),
                              format_fixed(row.cumulative_share * 100.0, 2),
                              detail::opt_cell(row.growth_rate, 3)});
    }
    table.rows.push_back({"total", std::to_string(growth.total_output), "100.00", "", "",
                          detail::opt_cell(growth.mean_growth_rate, 3)});
    return table;
}

inline Table matrix_as_table(const AuthorshipMatrix& matrix, double aapp) {
    Table table{"authorship-matrix", {"year"}, {}};
    for (int j = 1; j <= kMaxAuthorBucket; ++j) {
        table.columns.push_back(std::to_string(j));
    }
    table.columns.insert(table.columns.end(), {"over10", "bucketed_papers", "total_authors"});
    for (const auto& [year, row] : matrix.years) {
        std::vector<std::string> cells{std::to_string(year)};
        for (const auto count : row.buckets) cells.push_back(std::to_string(count));
        cells.push_back(std::to_string(row.over10));
        cells.push_back(std::to_string(row.bucketed_papers()));
        cells.push_back(std::to_string(row.total_authors));
        table.rows.push_back(std::move(cells));
    }
    std::vector<std::string> totals{"total"};
    for (const auto count : matrix.bucket_totals()) totals.push_back(std::to_string(count));
    totals.push_back(std::to_string(matrix.total_over10()));
    totals.push_back(std::to_string(matrix.total_bucketed_papers()));
    totals.push_back(std::to_string(matrix.total_authors()));
    table.rows.push_back(std::move(totals));
    table.rows.push_back({"aapp", format_fixed(aapp, 2)});
    return table;
}

inline Table collaboration_as_table(const CollaborationTable& collab) {
    Table table{"collaboration",
                {"year", "papers", "authors", "ci", "dc", "cai", "cc", "mcc", "mcc_minus_cc"},
                {}};
    auto cells = [](const std::string& label, const CollabRow& row) {
        return std::vector<std::string>{label,
                                        std::to_string(row.papers),
                                        std::to_string(row.authors),
                                        format_fixed(row.ci, 2),
                                        format_fixed(row.dc, 2),
                                        format_fixed(row.cai, 2),
                                        format_fixed(row.cc, 4),
                                        format_fixed(row.mcc, 4),
                                        format_fixed(row.mcc_minus_cc, 4)};
    };
    for (const auto& row : collab.rows) {
        table.rows.push_back(cells(std::to_string(row.year), row));
    }
    table.rows.push_back(cells("mean", collab.summary));
    return table;
}

inline Table fit_as_table(const LotkaFit& fit, const ProductivityHistogram& hist) {
    Table table{"lotka-fit", {"x", "y", "log_x", "log_y", "log_xy", "log_x_squared"}, {}};
    for (const auto& bin : hist.bins) {
        if (bin.authors <= 0) continue;
        const double lx = std::log10(static_cast<double>(bin.papers));
        const double ly = std::log10(static_cast<double>(bin.authors));
        table.rows.push_back({std::to_string(bin.papers), std::to_string(bin.authors),
                              format_fixed(lx, 9), format_fixed(ly, 9), format_fixed(lx * ly, 9),
                              format_fixed(lx * lx, 9)});
    }
    table.rows.push_back({"sum", "", format_fixed(fit.sums.log_x, 9), format_fixed(fit.sums.log_y, 9),
                          format_fixed(fit.sums.log_xy, 9), format_fixed(fit.sums.log_x_squared, 9)});
    table.rows.push_back({"exponent", format_fixed(fit.exponent, 4)});
    table.rows.push_back({"constant", format_fixed(fit.constant, 4)});
    return table;
}

inline Table ks_as_table(const std::vector<KsResult>& runs) {
    Table table{"ks", {"x", "observed", "observed_cum"}, {}};
    for (const auto& run : runs) {
        const std::string tag = "a=" + format_fixed(run.exponent, 2);
        table.columns.push_back("expected " + tag);
        table.columns.push_back("expected_cum " + tag);
        table.columns.push_back("diff " + tag);
    }
    if (runs.empty() || runs.front().rows.empty()) return table;
    const auto& lead_rows = runs.front().rows;
    for (std::size_t i = 0; i < lead_rows.size(); ++i) {
        std::vector<std::string> cells{std::to_string(lead_rows[i].x),
                                       format_fixed(lead_rows[i].observed, 4),
                                       format_fixed(lead_rows[i].observed_cum, 4)};
        for (const auto& run : runs) {
            cells.push_back(format_fixed(run.rows[i].expected, 4));
            cells.push_back(format_fixed(run.rows[i].expected_cum, 4));
            cells.push_back(format_fixed(run.rows[i].difference, 4));
        }
        table.rows.push_back(std::move(cells));
    }
    auto footer = [&](const std::string& label, auto&& value_of) {
        std::vector<std::string> cells{label, "", ""};
        for (const auto& run : runs) {
            cells.push_back(value_of(run));
            cells.push_back("");
            cells.push_back("");
        }
        table.rows.push_back(std::move(cells));
    };
    footer("d_max", [](const KsResult& run) { return format_fixed(run.d_max, 4); });
    footer("d_max_at_x", [](const KsResult& run) { return std::to_string(run.d_max_at_x); });
    footer("critical_value", [](const KsResult& run) { return format_fixed(run.critical_value, 4); });
    footer("verdict", [](const KsResult& run) { return to_string(run.verdict); });
    return table;
}

inline Table rgr_as_table(const ReportBundle& bundle) {
    Table table{"rgr-dt",
                {"year", "output", "cumulative", "log_output", "log_cumulative", "rgr", "doubling_time"},
                {}};
    for (const auto& row : bundle.rgr_rows) {
        table.rows.push_back({std::to_string(row.year), std::to_string(row.output),
                              std::to_string(row.cumulative), format_fixed(row.log_output, 4),
                              format_fixed(row.log_cumulative, 4), detail::opt_cell(row.rgr, 4),
                              detail::opt_cell(row.doubling_time, 4)});
    }
    auto period_rows = [&table](const PeriodMeans& means, const std::string& prefix) {
        for (const auto& period : means.periods) {
            table.rows.push_back({prefix + "mean " + std::to_string(period.range.first_year) + "-"
                                      + std::to_string(period.range.last_year),
                                  "", "", "", "", detail::opt_cell(period.mean_rgr, 5),
                                  detail::opt_cell(period.mean_dt, 5)});
        }
        if (means.grand_mean_dt) {
            table.rows.push_back(
                {prefix + "grand mean dt", "", "", "", "", "", detail::opt_cell(means.grand_mean_dt, 7)});
        }
    };
    period_rows(bundle.rgr_means, "");
    if (bundle.reference) {
        for (const auto& row : bundle.reference->rows) {
            table.rows.push_back({"reference " + std::to_string(row.year), "", "", "", "",
                                  detail::opt_cell(row.rgr, 4), detail::opt_cell(row.doubling_time, 4)});
        }
        period_rows(bundle.reference->means, "reference ");
    }
    return table;
}

/// The six report tables, in their canonical order.
inline std::vector<Table> report_tables(const ReportBundle& bundle,
                                        const ProductivityHistogram& histogram) {
    return {growth_as_table(bundle.growth),
            matrix_as_table(bundle.matrix, bundle.aapp),
            collaboration_as_table(bundle.collaboration),
            fit_as_table(bundle.fit, histogram),
            ks_as_table(bundle.ks_runs),
            rgr_as_table(bundle)};
}

}  // namespace sciento
