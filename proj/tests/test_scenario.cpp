#include <doctest.h>

#include <cmath>
#include <sstream>

#include "revdecide/error.hpp"
#include "revdecide/scenario.hpp"
#include "support.hpp"

using namespace revdecide;
using namespace testsupport;

namespace {

ScenarioReport run_fixture(ScenarioKind kind, const EngineConfig& config = EngineConfig::defaults()) {
    auto paths = fixture_layout(fixture_dir(), kind);
    REQUIRE(paths.has_value());
    return run_scenario({kind, config}, load_fixture_inputs(*paths, config));
}

ScenarioReport run_corpus(ScenarioKind kind, bool with_predictions = true) {
    auto op = with_predictions ? std::optional(predicted_path()) : std::nullopt;
    return run_scenario({kind, EngineConfig::defaults()}, load_corpus_inputs(corpus_path(), op, ValidationMode::complete));
}

std::vector<double> fp_values(const ScenarioReport& r) {
    std::vector<double> out;
    for (const auto& v : r.fp().values()) out.push_back(v.value_or(NAN));
    return out;
}

} // namespace

TEST_CASE("config parsing") {
    auto d = parse_config("{}");
    CHECK(d.scale.tau() == 2);
    CHECK(d.criteria.size() == 6);
    CHECK(d.aggregation.omega_ite == 0.5);
    CHECK(std::holds_alternative<AttentionWeights>(d.aggregation.weight_mode));

    auto c = parse_config(R"({"tau": 3, "criteria": ["food", {"id": "view", "name": "View"}], "omega_ine": 0.2,
                              "weight_mode": {"explicit": {"food": 0.25, "view": 0.75}},
                              "category_mapping": {"VIEW#GENERAL": "view"}})");
    CHECK(c.scale.tau() == 3);
    CHECK(c.criteria.at(1).display_name == "View");
    CHECK(c.aggregation.omega_ite == doctest::Approx(0.8));
    CHECK(std::get<ExplicitWeights>(c.aggregation.weight_mode).weights.at(crit("view")) == 0.75);
    CHECK(c.category_mapping.map("VIEW#GENERAL") == crit("view"));
    CHECK(c.category_mapping.map("FOOD#QUALITY") == crit("food"));

    auto again = parse_config(config_to_json(c));
    CHECK(config_to_json(again) == config_to_json(c));

    CHECK_THROWS_AS(parse_config(R"({"omega": 0.5})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"omega_ite": 0.6, "omega_ine": 0.6})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"weight_mode": "uniform"})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"weight_mode": {"explicit": {"food": 0.5, "parking": 0.5}}})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"tau": 0})"), Error);
    CHECK_THROWS_AS(parse_config("[1]"), Error);
}

TEST_CASE("scenario kinds") {
    CHECK(parse_scenario_kind("numeric_only") == ScenarioKind::numeric_only);
    CHECK_THROWS_AS(parse_scenario_kind("everything"), Error);
    CHECK(table_label(ScenarioKind::combined) == "num.+text");
    CHECK(table_label(ScenarioKind::annotated) == "Annotated evaluations");
    CHECK(table_label(ScenarioKind::numeric_only) == "Only numerical eval.");
    CHECK(table_label(ScenarioKind::text_only) == "Only text eval.");
    CHECK(all_scenarios().size() == 4);
}

TEST_CASE("fixture scenarios") {
    auto combined = run_fixture(ScenarioKind::combined);
    CHECK(ranking_of(combined.result) == "x2>x1>x3>x4");
    auto fp = fp_values(combined);
    const double expected[] = {1.66, 1.73, 1.65, 1.41};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(fp[i] - expected[i]) <= 0.02);
    CHECK(combined.result.intermediates.cp.has_value());
    CHECK(combined.inputs.size() == 13);

    CHECK(ranking_of(run_fixture(ScenarioKind::text_only).result) == "x1>x3>x2>x4");
    CHECK(ranking_of(run_fixture(ScenarioKind::numeric_only).result) == "x2>x3>x1>x4");
    CHECK(ranking_of(run_fixture(ScenarioKind::annotated).result) == "x2>x1>x3>x4");
}

TEST_CASE("corpus scenarios agree with fixture scenarios") {
    for (auto kind : {ScenarioKind::combined, ScenarioKind::text_only, ScenarioKind::numeric_only}) {
        CAPTURE(to_string(kind));
        auto corpus = run_corpus(kind, kind != ScenarioKind::numeric_only);
        auto fixture = run_fixture(kind);
        CHECK(corpus.result.order == fixture.result.order);
        auto a = fp_values(corpus);
        auto b = fp_values(fixture);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - b[i]) <= 0.005);
    }
    auto annotated = run_corpus(ScenarioKind::annotated, false);
    CHECK(ranking_of(annotated.result) == "x2>x1>x3>x4");
}

TEST_CASE("scenario input rules") {
    auto expect_usage = [](auto&& f) {
        try {
            f();
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.is_usage());
            CHECK_FALSE(e.stage().empty());
        }
    };
    expect_usage([] { run_corpus(ScenarioKind::combined, false); });
    expect_usage([] { run_corpus(ScenarioKind::numeric_only, true); });
    expect_usage([] {
        FixturePaths p;
        p.ine_dir = fixture_dir() / "ine";
        auto config = EngineConfig::defaults();
        run_scenario({ScenarioKind::text_only, config}, load_fixture_inputs(p, config));
    });
}

TEST_CASE("errors are tagged with their stage") {
    auto config = EngineConfig::defaults();
    FixturePaths p;
    p.ite_dir = fixture_dir() / "ite";
    p.counts = fixture_dir() / "counts_numeric.csv";
    auto inputs = load_fixture_inputs(p, config);
    auto& fx = std::get<FixtureInputs>(inputs.data);
    for (auto& [c, n] : *fx.counts) n = 0;
    try {
        run_scenario({ScenarioKind::text_only, config}, inputs);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degenerate_input);
        CHECK(e.stage() == "weighting");
    }
}

TEST_CASE("json report") {
    auto report = run_fixture(ScenarioKind::combined);
    auto text = emit_report(report, ReportFormat::json);

    SUBCASE("deterministic") { CHECK(emit_report(run_fixture(ScenarioKind::combined), ReportFormat::json) == text); }

    SUBCASE("re-parses to an equal structure") {
        auto back = parse_report_json(text);
        CHECK(back.kind == report.kind);
        CHECK(back.criteria == report.criteria);
        CHECK(back.inputs == report.inputs);
        CHECK(back.config_json == report.config_json);
        CHECK(back.warnings == report.warnings);
        CHECK(back.result.order == report.result.order);
        CHECK(back.result.ties == report.result.ties);
        CHECK(back.result.unrated == report.result.unrated);
        CHECK(back.result.intermediates.ite.size() == 6);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(*back.fp().values()[i] == report_precision(*report.fp().values()[i]));
        }
        for (const auto& [c, w] : report.weights()) CHECK(back.weights().at(c) == report_precision(w));
        CHECK(emit_report(back, ReportFormat::json) == text);
    }

    SUBCASE("summary keeps only fp and ranking") {
        auto s = emit_report(report, ReportFormat::json, {true});
        CHECK(s.find("intermediates") == std::string::npos);
        CHECK(s.find("\"ranking\"") != std::string::npos);
        CHECK(s.size() < text.size() / 4);
    }
}

TEST_CASE("csv report round trip") {
    auto report = run_fixture(ScenarioKind::text_only);
    auto from_json = parse_report_json(emit_report(report, ReportFormat::json));
    auto tables = parse_report_csv(emit_report(report, ReportFormat::csv));
    REQUIRE(tables.size() == 1);
    const auto& t = tables.front();
    CHECK(t.kind == ScenarioKind::text_only);
    REQUIRE(t.fp.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(t.fp[i].first == from_json.fp().alternatives()[i]);
        CHECK(t.fp[i].second == from_json.fp().values()[i]);
    }
    REQUIRE(t.weights.size() == 6);
    for (const auto& [c, w] : t.weights) CHECK(w == from_json.weights().at(c));
    CHECK(t.order == from_json.result.order);

    CHECK_THROWS_AS(parse_report_csv("a,b\n"), Error);
}

TEST_CASE("markdown batch table") {
    std::vector<ScenarioReport> reports;
    for (auto kind : all_scenarios()) reports.push_back(run_fixture(kind));
    auto md = emit_batch(reports, ReportFormat::markdown);
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(md);
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 6);
    CHECK(lines[2].rfind("| Annotated evaluations |", 0) == 0);
    CHECK(lines[3].rfind("| Only numerical eval. |", 0) == 0);
    CHECK(lines[4].rfind("| Only text eval. |", 0) == 0);
    CHECK(lines[5].rfind("| num.+text |", 0) == 0);
    CHECK(lines[5].find("x2 > x1 > x3 > x4") != std::string::npos);
    CHECK(lines[3].find(" 1.76 ") != std::string::npos);

    auto single = emit_report(reports.back(), ReportFormat::markdown);
    CHECK(single.find("| Restaurant | 0.306 |") != std::string::npos);

    CHECK_THROWS_AS(parse_report_format("xml"), Error);
    CHECK(parse_report_format("md") == ReportFormat::markdown);
}

TEST_CASE("scenarios do not interfere") {
    std::vector<std::string> together;
    for (auto kind : all_scenarios()) together.push_back(emit_report(run_fixture(kind), ReportFormat::json));
    auto kinds = all_scenarios();
    for (std::size_t i = kinds.size(); i-- > 0;) {
        CHECK(emit_report(run_fixture(kinds[i]), ReportFormat::json) == together[i]);
    }
}

TEST_CASE("report precision") {
    CHECK(report_precision(1.6612345678) == 1.66123);
    CHECK(report_precision(-0.0) == 0.0);
    CHECK(report_precision(2.0 / 3.0) == 0.666667);
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
