// sciento: scientometric indicators over bibliographic records or
// pre-aggregated tables: output growth, authorship patterns, collaboration
// indices, inverse power-law fitting and K-S goodness of fit.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sciento/sciento.hpp"

namespace {

namespace fs = std::filesystem;

struct CliOptions {
    std::string fixture_path;
    std::string wos_path;
    std::string csv_path;
    std::string map_authors = "Authors";
    std::string map_year = "Year";
    std::string map_source;
    std::string author_sep = ";";
    std::string variant = "standard";
    double level = 0.01;
    std::optional<double> alpha;
    std::string format = "markdown";
    std::string out_dir;
    int min_year = 1900;
    int max_year = 2100;
    std::vector<int> period_starts;
};

void add_input_options(CLI::App* cmd, CliOptions& opt) {
    auto* fixture = cmd->add_option("--fixture", opt.fixture_path,
                                    "aggregate fixture JSON (pre-tabulated counts)");
    auto* wos = cmd->add_option("--wos", opt.wos_path, "Web of Science tab-delimited export");
    auto* csv = cmd->add_option("--csv", opt.csv_path, "CSV of records (see --map-* flags)");
    fixture->excludes(wos)->excludes(csv);
    wos->excludes(csv);
    cmd->add_option("--map-authors", opt.map_authors, "CSV column holding the byline")
        ->capture_default_str();
    cmd->add_option("--map-year", opt.map_year, "CSV column holding the year")
        ->capture_default_str();
    cmd->add_option("--map-source", opt.map_source, "CSV column holding the source title");
    cmd->add_option("--author-sep", opt.author_sep, "separator between authors in one field")
        ->capture_default_str();
    cmd->add_option("--min-year", opt.min_year, "ingest window lower bound")->capture_default_str();
    cmd->add_option("--max-year", opt.max_year, "ingest window upper bound")->capture_default_str();
}

void add_run_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--variant", opt.variant, "formula family: standard|paper")
        ->check(CLI::IsMember({"standard", "paper"}))
        ->capture_default_str();
    cmd->add_option("--level", opt.level, "K-S significance level: 0.01|0.05")
        ->capture_default_str();
    cmd->add_option("--alpha", opt.alpha, "override the fitted exponent for the K-S run");
    cmd->add_option("--format", opt.format, "output format: csv|markdown|json")
        ->check(CLI::IsMember({"csv", "markdown", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.out_dir, "write output files into this directory");
    cmd->add_option("--periods", opt.period_starts,
                    "first years of the RGR mean periods (default: two halves)")
        ->delimiter(',');
}

sciento::RunConfig make_config(const CliOptions& opt) {
    sciento::RunConfig config;
    int inputs = 0;
    if (!opt.fixture_path.empty()) {
        config.input = sciento::InputKind::fixture;
        config.input_path = opt.fixture_path;
        ++inputs;
    }
    if (!opt.wos_path.empty()) {
        config.input = sciento::InputKind::wos;
        config.input_path = opt.wos_path;
        ++inputs;
    }
    if (!opt.csv_path.empty()) {
        config.input = sciento::InputKind::csv;
        config.input_path = opt.csv_path;
        ++inputs;
    }
    if (inputs != 1) {
        throw sciento::InputError("exactly one of --fixture, --wos, --csv is required");
    }
    if (opt.author_sep.size() != 1) {
        throw sciento::InputError("--author-sep must be a single character");
    }
    config.csv_mapping = {opt.map_authors, opt.map_year, opt.map_source, opt.author_sep[0]};
    config.variant = sciento::variant_from_string(opt.variant);
    if (opt.level != 0.01 && opt.level != 0.05) {
        throw sciento::InputError("--level must be 0.01 or 0.05");
    }
    config.significance_level = opt.level;
    config.alpha_override = opt.alpha;
    config.format = sciento::output_format_from_string(opt.format);
    config.out_dir = opt.out_dir;
    config.window = {opt.min_year, opt.max_year};
    config.period_starts = opt.period_starts;
    return config;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw sciento::InputError("cannot write '" + path.string() + "'");
    }
    out << content;
}

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    return dir;
}

std::string extension(sciento::OutputFormat format) {
    switch (format) {
        case sciento::OutputFormat::csv: return ".csv";
        case sciento::OutputFormat::json: return ".json";
        case sciento::OutputFormat::markdown: break;
    }
    return ".md";
}

/// Emits a chosen subset of the report tables (all six, or a slice for the
/// narrower subcommands).
void emit_tables(const sciento::ReportBundle& bundle, const sciento::Corpus& corpus,
                 const sciento::RunConfig& config, const std::vector<std::string>& names) {
    auto tables = sciento::report_tables(bundle, corpus.histogram);
    std::erase_if(tables, [&](const sciento::Table& table) {
        return std::find(names.begin(), names.end(), table.name) == names.end();
    });

    if (config.format == sciento::OutputFormat::json) {
        auto doc = sciento::report_json(bundle, corpus.histogram, config.input_path);
        if (names.size() < 6) {
            auto& all = doc["tables"];
            nlohmann::ordered_json kept;
            for (const auto& name : names) {
                std::string key = name;
                std::replace(key.begin(), key.end(), '-', '_');
                kept[key] = all[key];
            }
            doc["tables"] = std::move(kept);
        }
        const std::string text = doc.dump(2) + "\n";
        if (config.out_dir.empty()) {
            std::cout << text;
        } else {
            const auto path = prepare_out_dir(config.out_dir) / "report.json";
            write_file(path, text);
            std::cerr << "wrote " << path.string() << "\n";
        }
        return;
    }

    const bool csv = config.format == sciento::OutputFormat::csv;
    if (config.out_dir.empty()) {
        for (const auto& table : tables) {
            if (csv) {
                std::cout << "# " << table.name << "\n" << sciento::to_csv(table) << "\n";
            } else {
                std::cout << sciento::to_markdown(table);
            }
        }
        return;
    }
    const auto dir = prepare_out_dir(config.out_dir);
    for (const auto& table : tables) {
        const auto path = dir / (table.name + extension(config.format));
        write_file(path, csv ? sciento::to_csv(table) : sciento::to_markdown(table));
        std::cerr << "wrote " << path.string() << "\n";
    }
}

void print_diagnostics(const sciento::Corpus& corpus) {
    if (corpus.diagnostics.empty()) return;
    std::cerr << corpus.diagnostics.size() << " row(s) skipped:\n";
    for (const auto& diagnostic : corpus.diagnostics) {
        std::cerr << "  line " << diagnostic.line << ": " << diagnostic.message << "\n";
    }
}

int cmd_report(const CliOptions& opt, const std::vector<std::string>& names) {
    const auto config = make_config(opt);
    const auto corpus = sciento::load_corpus(config);
    print_diagnostics(corpus);
    const auto bundle = sciento::compute_report(corpus, config);
    emit_tables(bundle, corpus, config, names);
    return 0;
}

int cmd_lotka(const CliOptions& opt) {
    const auto config = make_config(opt);
    const auto corpus = sciento::load_corpus(config);
    print_diagnostics(corpus);
    const auto bundle = sciento::compute_report(corpus, config);
    const auto doc = sciento::lotka_json(bundle, corpus.histogram, config.alpha_override);
    if (config.format == sciento::OutputFormat::json || config.format == sciento::OutputFormat::csv) {
        const std::string text = doc.dump(2) + "\n";
        if (config.out_dir.empty()) {
            std::cout << text;
        } else {
            const auto path = prepare_out_dir(config.out_dir) / "lotka.json";
            write_file(path, text);
            std::cerr << "wrote " << path.string() << "\n";
        }
    } else {
        std::ostringstream text;
        text << "exponent:            " << sciento::format_fixed(doc["exponent"].get<double>(), 4) << "\n"
             << "constant:            " << sciento::format_fixed(doc["constant"].get<double>(), 4) << "\n"
             << "n:                   " << doc["n"].get<long long>() << "\n"
             << "d-max:               " << sciento::format_fixed(doc["dmax"].get<double>(), 4)
             << " at x=" << doc["dmax_at_x"].get<long long>() << "\n"
             << "critical value:      " << sciento::format_fixed(doc["critical_value"].get<double>(), 4)
             << " (level " << sciento::format_fixed(doc["significance_level"].get<double>(), 2) << ")\n"
             << "verdict:             " << doc["verdict"].get<std::string>() << "\n"
             << "single-paper share:  "
             << sciento::format_fixed(doc["single_author_share"].get<double>(), 4) << "\n";
        if (doc.contains("inverse_square")) {
            const auto& square = doc["inverse_square"];
            text << "inverse square law:  d-max "
                 << sciento::format_fixed(square["dmax"].get<double>(), 4) << ", critical "
                 << sciento::format_fixed(square["critical_value"].get<double>(), 4) << ", "
                 << square["verdict"].get<std::string>() << "\n";
        }
        if (config.out_dir.empty()) {
            std::cout << text.str();
        } else {
            const auto path = prepare_out_dir(config.out_dir) / "lotka.txt";
            write_file(path, text.str());
            std::cerr << "wrote " << path.string() << "\n";
        }
    }
    return 0;
}

int cmd_ingest(const CliOptions& opt) {
    const auto config = make_config(opt);
    if (config.input == sciento::InputKind::fixture) {
        throw sciento::InputError("ingest reads raw records; use --wos or --csv");
    }
    const auto corpus = sciento::load_corpus(config);
    print_diagnostics(corpus);
    std::cout << "records:      " << corpus.record_count << "\n"
              << "skipped rows: " << corpus.diagnostics.size() << "\n";
    if (!corpus.series.empty()) {
        std::cout << "years:        " << corpus.series.begin()->first << ".."
                  << corpus.series.rbegin()->first << "\n";
    }
    std::cout << "authors:      " << corpus.histogram.total_authors() << " distinct\n";
    if (!config.out_dir.empty()) {
        sciento::AggregateFixture fixture;
        for (const auto& [year, row] : corpus.matrix.years) {
            sciento::FixtureYear fy;
            fy.year = year;
            fy.bucket_counts = row.buckets;
            fy.over10 = row.over10;
            fy.total_papers = row.bucketed_papers() + row.over10;
            fy.total_authors = row.total_authors;
            fixture.years.push_back(fy);
        }
        fixture.productivity = corpus.histogram.bins;
        fixture.top_bucket_inclusive = corpus.histogram.top_bucket_inclusive;
        const auto path = prepare_out_dir(config.out_dir) / "aggregate_fixture.json";
        write_file(path, sciento::serialize_aggregate_fixture(fixture));
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scientometric indicators: growth, collaboration, author productivity"};
    app.require_subcommand(1);

    CliOptions opt;
    auto* report = app.add_subcommand("report", "all six analysis tables");
    auto* lotka = app.add_subcommand("lotka", "power-law fit and K-S summary");
    auto* growth = app.add_subcommand("growth", "output growth and RGR/doubling-time tables");
    auto* collab = app.add_subcommand("collab", "collaboration indicators table");
    auto* ingest = app.add_subcommand("ingest", "parse records, report diagnostics, emit a fixture");
    for (auto* cmd : {report, lotka, growth, collab, ingest}) {
        add_input_options(cmd, opt);
    }
    for (auto* cmd : {report, lotka, growth, collab}) {
        add_run_options(cmd, opt);
    }
    ingest->add_option("--out", opt.out_dir, "write aggregate_fixture.json into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // every command-line problem is an input error
    }

    try {
        if (report->parsed()) {
            return cmd_report(opt, {"growth", "authorship-matrix", "collaboration", "lotka-fit", "ks",
                                    "rgr-dt"});
        }
        if (growth->parsed()) {
            return cmd_report(opt, {"growth", "rgr-dt"});
        }
        if (collab->parsed()) {
            return cmd_report(opt, {"collaboration"});
        }
        if (lotka->parsed()) {
            return cmd_lotka(opt);
        }
        if (ingest->parsed()) {
            return cmd_ingest(opt);
        }
    } catch (const sciento::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const sciento::ComputeError& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
