#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "sciento/report.hpp"

using namespace sciento;

namespace {

RunConfig fixture_config() {
    RunConfig config;
    config.input = InputKind::fixture;
    config.input_path = SCIENTO_FIXTURE_PATH;
    config.variant = Variant::paper;
    return config;
}

}  // namespace

TEST_CASE("default periods split the year range into two halves") {
    const std::vector<int> even = {2008, 2009, 2010, 2011, 2012, 2013, 2014, 2015, 2016, 2017};
    auto periods = make_periods(even, {});
    REQUIRE(periods.size() == 2);
    CHECK(periods[0].first_year == 2008);
    CHECK(periods[0].last_year == 2012);
    CHECK(periods[1].first_year == 2013);
    CHECK(periods[1].last_year == 2017);

    const std::vector<int> odd = {2000, 2001, 2002};
    periods = make_periods(odd, {});
    REQUIRE(periods.size() == 2);
    CHECK(periods[0].last_year == 2001);

    const std::vector<int> single = {1999};
    periods = make_periods(single, {});
    REQUIRE(periods.size() == 1);

    periods = make_periods(even, {2010, 2015});
    REQUIRE(periods.size() == 3);
    CHECK(periods[0].first_year == 2008);
    CHECK(periods[0].last_year == 2009);
    CHECK(periods[1].first_year == 2010);
    CHECK(periods[2].first_year == 2015);
    CHECK(periods[2].last_year == 2017);
}

TEST_CASE("report bundle ties the modules together") {
    const auto config = fixture_config();
    const auto corpus = load_corpus(config);
    const auto bundle = compute_report(corpus, config);

    CHECK(bundle.growth.total_output == 9734);
    CHECK(std::abs(bundle.aapp - 3.31) <= 0.005);
    REQUIRE(bundle.ks_runs.size() == 2);
    CHECK(bundle.ks_runs[0].verdict == KsVerdict::fits);
    CHECK(bundle.ks_runs[1].exponent == 2.0);
    CHECK(bundle.ks_runs[1].verdict == KsVerdict::rejected);
    REQUIRE(bundle.reference.has_value());
    REQUIRE(bundle.reference->means.periods.size() == 2);
    CHECK(bundle.reference->means.periods[0].mean_rgr == doctest::Approx(0.52262).epsilon(1e-9));

    SUBCASE("alpha override replaces the lead run") {
        RunConfig override_config = config;
        override_config.alpha_override = 2.0;
        const auto overridden = compute_report(corpus, override_config);
        REQUIRE(overridden.ks_runs.size() == 1);
        CHECK(overridden.ks_runs[0].exponent == 2.0);
        CHECK(overridden.ks_runs[0].verdict == KsVerdict::rejected);
        CHECK(std::abs(overridden.ks_runs[0].d_max - 0.2018) <= 0.001);
    }
}

TEST_CASE("report json round-trips through parsing") {
    const auto config = fixture_config();
    const auto corpus = load_corpus(config);
    const auto bundle = compute_report(corpus, config);
    const auto doc = report_json(bundle, corpus.histogram, config.input_path);

    const std::string text = doc.dump(2);
    const auto parsed = nlohmann::ordered_json::parse(text);
    CHECK(parsed == doc);
    CHECK(parsed.dump(2) == text);

    const auto& tables = parsed["tables"];
    CHECK(tables["growth"]["rows"].size() == 10);
    CHECK(tables["growth"]["rows"][0]["growth_rate"].is_null());
    CHECK(tables["authorship_matrix"]["total_authors"] == 31803);
    CHECK(tables["collaboration"]["rows"].size() == 10);
    CHECK(tables["lotka_fit"]["sums"]["points"] == 10);
    CHECK(tables["ks"]["n"] == 23460);
    CHECK(tables["ks"]["runs"].size() == 2);
    CHECK(tables["rgr_dt"]["rows"].size() == 10);
    CHECK(tables["rgr_dt"]["reference"]["rows"].size() == 10);
}

TEST_CASE("rendered tables are deterministic and carry the six names") {
    const auto config = fixture_config();
    const auto corpus = load_corpus(config);
    const auto bundle = compute_report(corpus, config);

    const auto tables = report_tables(bundle, corpus.histogram);
    REQUIRE(tables.size() == 6);
    const std::vector<std::string> names = {"growth", "authorship-matrix", "collaboration",
                                            "lotka-fit", "ks", "rgr-dt"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        CHECK(tables[i].name == names[i]);
    }

    const auto again = report_tables(compute_report(corpus, config), corpus.histogram);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        CHECK(to_markdown(tables[i]) == to_markdown(again[i]));
        CHECK(to_csv(tables[i]) == to_csv(again[i]));
    }
}

TEST_CASE("csv rendering quotes awkward cells") {
    Table table{"t", {"a", "b"}, {{"plain", "with,comma"}, {"with\"quote", "with\nnewline"}}};
    const auto csv = to_csv(table);
    CHECK(csv == "a,b\nplain,\"with,comma\"\n\"with\"\"quote\",\"with\nnewline\"\n");
}

TEST_CASE("lotka json has the flat summary shape") {
    const auto config = fixture_config();
    const auto corpus = load_corpus(config);
    const auto bundle = compute_report(corpus, config);
    const auto doc = lotka_json(bundle, corpus.histogram, std::nullopt);

    CHECK(std::abs(doc["exponent"].get<double>() - 2.84) <= 0.005);
    CHECK(std::abs(doc["constant"].get<double>() - 0.8083) <= 0.0005);
    CHECK(std::abs(doc["dmax"].get<double>() - 0.0073) <= 0.001);
    CHECK(doc["verdict"] == "fits");
    CHECK(doc["inverse_square"]["verdict"] == "rejected");
    CHECK(std::abs(doc["inverse_square"]["dmax"].get<double>() - 0.2018) <= 0.001);
}

TEST_CASE("corpus loading surfaces missing files as input errors") {
    RunConfig config;
    config.input = InputKind::fixture;
    config.input_path = "/nonexistent/fixture.json";
    CHECK_THROWS_AS(load_corpus(config), InputError);
}
