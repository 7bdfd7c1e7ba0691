#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "revdecide/error.hpp"
#include "revdecide/scenario.hpp"

namespace fs = std::filesystem;
using namespace revdecide;

namespace {

enum Exit { ok = 0, validation = 1, usage = 2, internal = 3 };

struct RunArgs {
    std::string scenario = "combined";
    std::string corpus, opinions;
    std::string ite_dir, ine_dir, ip_dir, counts, weights, fixtures;
    std::string config, format = "json", out, mode = "complete";
    bool summary = false;
};

ValidationMode parse_mode(const std::string& s) {
    if (s == "complete") return ValidationMode::complete;
    if (s == "lenient") return ValidationMode::lenient;
    fail(ErrorKind::usage, "unknown validation mode '" + s + "'");
}

std::optional<fs::path> opt_path(const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<fs::path>(s);
}

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) fail(ErrorKind::io, "cannot write '" + out + "'");
    f << text;
}

int cmd_validate(const std::string& corpus, const std::string& mode, const std::string& opinions) {
    auto ds = load_dataset(corpus, parse_mode(mode));
    std::size_t gold = ds.gold_opinions ? ds.gold_opinions->size() : 0;
    std::cout << "ok: " << ds.experts.size() << " experts, " << ds.alternatives.size() << " alternatives, "
              << ds.criteria.size() << " criteria, " << ds.reviews.size() << " reviews, " << gold
              << " gold opinions\n";
    if (!opinions.empty()) {
        auto grouped = collect_opinions(ds, OpinionSource::external(opinions), CategoryMapping::semeval_restaurants());
        std::size_t n = 0;
        for (const auto& [key, ops] : grouped) n += ops.size();
        std::cout << "ok: " << n << " opinions in " << opinions << '\n';
    }
    for (const auto& w : ds.warnings) std::cerr << "warning: " << w << '\n';
    return Exit::ok;
}

int cmd_run(const RunArgs& a) {
    EngineConfig config = a.config.empty() ? EngineConfig::defaults() : load_config(a.config);
    const auto format = parse_report_format(a.format);
    const auto mode = parse_mode(a.mode);
    const bool corpus_mode = !a.corpus.empty();
    const bool explicit_fixture = !a.ite_dir.empty() || !a.ine_dir.empty() || !a.ip_dir.empty() ||
                                  !a.counts.empty() || !a.weights.empty();
    if (corpus_mode + explicit_fixture + !a.fixtures.empty() != 1) {
        fail(ErrorKind::usage, "give exactly one input mode: --corpus, --fixtures, or the matrix flags");
    }
    if (!a.opinions.empty() && !corpus_mode) fail(ErrorKind::usage, "--opinions needs --corpus");

    std::vector<ScenarioKind> kinds;
    if (a.scenario == "all") {
        kinds = all_scenarios();
    } else {
        kinds.push_back(parse_scenario_kind(a.scenario));
    }

    std::vector<ScenarioReport> reports;
    for (auto kind : kinds) {
        ScenarioSpec spec{kind, config};
        ScenarioInputs inputs;
        if (corpus_mode) {
            const bool wants_opinions = kind == ScenarioKind::combined || kind == ScenarioKind::text_only;
            if (a.scenario == "all" && wants_opinions && a.opinions.empty()) continue;
            auto op = wants_opinions || a.scenario != "all" ? opt_path(a.opinions) : std::nullopt;
            inputs = load_corpus_inputs(a.corpus, op, mode);
        } else if (explicit_fixture) {
            FixturePaths p{opt_path(a.ite_dir), opt_path(a.ine_dir), opt_path(a.ip_dir), opt_path(a.counts),
                           opt_path(a.weights)};
            inputs = load_fixture_inputs(p, config);
        } else {
            auto p = fixture_layout(a.fixtures, kind);
            if (!p) {
                if (a.scenario == "all") continue;
                fail(ErrorKind::usage, "fixture directory '" + a.fixtures + "' lacks the files for " +
                                           std::string(to_string(kind)));
            }
            inputs = load_fixture_inputs(*p, config);
        }
        reports.push_back(run_scenario(spec, inputs));
    }

    EmitOptions options{a.summary};
    if (a.scenario == "all") {
        write_output(emit_batch(reports, format, options), a.out);
    } else {
        write_output(emit_report(reports.front(), format, options), a.out);
    }
    return Exit::ok;
}

int cmd_weights(const std::string& counts_path, const std::string& config_path) {
    EngineConfig config = config_path.empty() ? EngineConfig::defaults() : load_config(config_path);
    auto counts = load_counts_fixture(counts_path, config.criteria);
    auto w = attention_weights(counts);
    std::cout << "criterion,weight\n";
    for (const auto& c : config.criteria) {
        auto it = w.find(c.id);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", it == w.end() ? 0.0 : it->second);
        std::cout << c.id.value << ',' << buf << '\n';
    }
    return Exit::ok;
}

int cmd_rank(const std::string& fp_path, int tau) {
    auto fp = load_fp_file(fp_path, Scale(tau));
    auto result = rank(fp);
    std::cout << ranking_string(result) << '\n';
    return Exit::ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank alternatives from multi-expert reviews"};
    app.require_subcommand(1);

    std::string corpus, mode = "complete", opinions;
    auto* validate = app.add_subcommand("validate", "check a review corpus");
    validate->add_option("corpus", corpus, "corpus JSON")->required();
    validate->add_option("--mode", mode, "complete or lenient");
    validate->add_option("--opinions", opinions, "opinion exchange JSONL to check against the corpus");

    RunArgs ra;
    auto* run = app.add_subcommand("run", "run one scenario or all four");
    run->add_option("--scenario", ra.scenario, "combined, annotated, numeric_only, text_only or all");
    run->add_option("--corpus", ra.corpus, "corpus JSON");
    run->add_option("--opinions", ra.opinions, "opinion exchange JSONL");
    run->add_option("--ite-dir", ra.ite_dir, "directory of per-expert ITE CSVs");
    run->add_option("--ine-dir", ra.ine_dir, "directory of per-expert INE CSVs");
    run->add_option("--ip-dir", ra.ip_dir, "directory of per-expert IP CSVs");
    run->add_option("--counts", ra.counts, "criterion,count CSV");
    run->add_option("--weights", ra.weights, "criterion,weight CSV");
    run->add_option("--fixtures", ra.fixtures, "fixture directory with the conventional layout");
    run->add_option("--config", ra.config, "config JSON");
    run->add_option("--format", ra.format, "json, csv or md");
    run->add_option("--out", ra.out, "output file (stdout if omitted)");
    run->add_option("--mode", ra.mode, "corpus validation: complete or lenient");
    run->add_flag("--summary", ra.summary, "only fp and ranking");

    std::string counts, wconfig;
    auto* weights = app.add_subcommand("weights", "attention weights from evaluation counts");
    weights->add_option("--counts", counts, "criterion,count CSV")->required();
    weights->add_option("--config", wconfig, "config JSON (criteria order)");

    std::string fp;
    int tau = 2;
    auto* rank_cmd = app.add_subcommand("rank", "rank alternatives from a preference vector");
    rank_cmd->add_option("--fp", fp, "alternative,fp CSV")->required();
    rank_cmd->add_option("--tau", tau, "scale half-width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*validate) return cmd_validate(corpus, mode, opinions);
        if (*run) return cmd_run(ra);
        if (*weights) return cmd_weights(counts, wconfig);
        if (*rank_cmd) return cmd_rank(fp, tau);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_usage() ? Exit::usage : Exit::validation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return Exit::internal;
    }
    return Exit::usage;
}
