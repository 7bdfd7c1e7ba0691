#include "revdecide/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "revdecide/error.hpp"

namespace revdecide {

using nlohmann::json;

// --- scenario kinds ----------------------------------------------------------

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::combined: return "combined";
    case ScenarioKind::annotated: return "annotated";
    case ScenarioKind::numeric_only: return "numeric_only";
    case ScenarioKind::text_only: return "text_only";
    }
    return "combined";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
    for (auto kind : all_scenarios()) {
        if (text == to_string(kind)) return kind;
    }
    fail(ErrorKind::usage, "unknown scenario '" + std::string(text) +
                               "' (expected combined, annotated, numeric_only or text_only)");
}

std::string_view table_label(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::annotated: return "Annotated evaluations";
    case ScenarioKind::numeric_only: return "Only numerical eval.";
    case ScenarioKind::text_only: return "Only text eval.";
    case ScenarioKind::combined: return "num.+text";
    }
    return "";
}

std::vector<ScenarioKind> all_scenarios() {
    return {ScenarioKind::annotated, ScenarioKind::numeric_only, ScenarioKind::text_only, ScenarioKind::combined};
}

// --- config ------------------------------------------------------------------

namespace {

json criteria_to_json(const std::vector<Criterion>& criteria) {
    json arr = json::array();
    for (const auto& c : criteria) {
        arr.push_back({{"id", c.id.value}, {"name", c.display_name}});
    }
    return arr;
}

std::vector<Criterion> criteria_from_json(const json& arr) {
    std::vector<Criterion> out;
    for (const auto& item : arr) {
        if (item.is_string()) {
            auto id = item.get<std::string>();
            out.push_back({CriterionId(id), id});
        } else {
            auto id = item.at("id").get<std::string>();
            out.push_back({CriterionId(id), item.value("name", id)});
        }
    }
    if (out.empty()) {
        fail(ErrorKind::validation, "criteria list is empty");
    }
    return out;
}

json weights_to_json(const Weights& w) {
    json obj = json::object();
    for (const auto& [crit, value] : w) obj[crit.value] = value;
    return obj;
}

json config_json_value(const EngineConfig& config) {
    json mapping = json::object();
    for (const auto& [label, crit] : config.category_mapping.table()) mapping[label] = crit.value;
    json mode;
    if (const auto* ex = std::get_if<ExplicitWeights>(&config.aggregation.weight_mode)) {
        mode = {{"explicit", weights_to_json(ex->weights)}};
    } else {
        mode = "attention";
    }
    return {
        {"tau", config.scale.tau()},
        {"criteria", criteria_to_json(config.criteria)},
        {"omega_ite", config.aggregation.omega_ite},
        {"omega_ine", config.aggregation.omega_ine},
        {"weight_mode", mode},
        {"category_mapping", mapping},
    };
}

} // namespace

EngineConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::schema, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(ErrorKind::schema, "config must be a JSON object");
    static const std::set<std::string> known = {"tau",       "criteria",    "omega_ite",
                                                "omega_ine", "weight_mode", "category_mapping"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key)) fail(ErrorKind::schema, "unknown config key '" + key + "'");
    }
    EngineConfig config;
    try {
        if (doc.contains("tau")) config.scale = Scale(doc.at("tau").get<int>());
        if (doc.contains("criteria")) config.criteria = criteria_from_json(doc.at("criteria"));
        const bool has_ite = doc.contains("omega_ite");
        const bool has_ine = doc.contains("omega_ine");
        if (has_ite) config.aggregation.omega_ite = doc.at("omega_ite").get<double>();
        if (has_ine) config.aggregation.omega_ine = doc.at("omega_ine").get<double>();
        if (has_ite && !has_ine) config.aggregation.omega_ine = 1.0 - config.aggregation.omega_ite;
        if (has_ine && !has_ite) config.aggregation.omega_ite = 1.0 - config.aggregation.omega_ine;
        if (doc.contains("weight_mode")) {
            const auto& mode = doc.at("weight_mode");
            if (mode.is_string() && mode.get<std::string>() == "attention") {
                config.aggregation.weight_mode = AttentionWeights{};
            } else if (mode.is_object() && mode.contains("explicit")) {
                Weights w;
                for (const auto& [crit, value] : mode.at("explicit").items()) {
                    w[CriterionId(crit)] = value.get<double>();
                }
                config.aggregation.weight_mode = ExplicitWeights{std::move(w)};
            } else {
                fail(ErrorKind::schema, "weight_mode must be \"attention\" or {\"explicit\": {...}}");
            }
        }
        if (doc.contains("category_mapping")) {
            for (const auto& [label, crit] : doc.at("category_mapping").items()) {
                config.category_mapping.add(label, CriterionId(crit.get<std::string>()));
            }
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::schema, std::string("config has an unexpected shape: ") + e.what());
    }
    config.aggregation.validate();
    if (const auto* ex = std::get_if<ExplicitWeights>(&config.aggregation.weight_mode)) {
        for (const auto& [crit, w] : ex->weights) {
            bool found = std::any_of(config.criteria.begin(), config.criteria.end(),
                                     [&](const Criterion& c) { return c.id == crit; });
            if (!found) fail(ErrorKind::schema, "explicit weight for unknown criterion '" + crit.value + "'");
        }
    }
    return config;
}

EngineConfig load_config(const std::filesystem::path& path) { return parse_config(read_text_file(path)); }

std::string config_to_json(const EngineConfig& config) { return config_json_value(config).dump(); }

// --- provenance --------------------------------------------------------------

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        fail(ErrorKind::io, "SHA-256 computation failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text_file(path)); }

namespace {

void record(std::vector<InputFile>& files, const std::filesystem::path& path) {
    files.push_back({path.generic_string(), sha256_file(path)});
}

void record_dir(std::vector<InputFile>& files, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) return;
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) record(files, p);
}

} // namespace

ScenarioInputs load_corpus_inputs(const std::filesystem::path& corpus,
                                  const std::optional<std::filesystem::path>& opinions, ValidationMode mode) {
    ScenarioInputs inputs;
    CorpusInputs data{load_dataset(corpus, mode), std::nullopt};
    record(inputs.files, corpus);
    if (opinions) {
        data.opinions = OpinionSource::external(*opinions);
        record(inputs.files, *opinions);
    }
    inputs.data = std::move(data);
    return inputs;
}

ScenarioInputs load_fixture_inputs(const FixturePaths& paths, const EngineConfig& config) {
    ScenarioInputs inputs;
    FixtureInputs data;
    if (paths.ite_dir) {
        data.ite = load_matrix_dir(*paths.ite_dir, config.criteria, config.scale);
        record_dir(inputs.files, *paths.ite_dir);
    }
    if (paths.ine_dir) {
        data.ine = load_matrix_dir(*paths.ine_dir, config.criteria, config.scale);
        record_dir(inputs.files, *paths.ine_dir);
    }
    if (paths.ip_dir) {
        data.ip = load_matrix_dir(*paths.ip_dir, config.criteria, config.scale);
        record_dir(inputs.files, *paths.ip_dir);
    }
    if (paths.counts) {
        data.counts = load_counts_fixture(*paths.counts, config.criteria);
        record(inputs.files, *paths.counts);
    }
    if (paths.weights) {
        data.weights = load_weights_fixture(*paths.weights, config.criteria);
        record(inputs.files, *paths.weights);
    }
    inputs.data = std::move(data);
    return inputs;
}

std::optional<FixturePaths> fixture_layout(const std::filesystem::path& dir, ScenarioKind kind) {
    namespace fs = std::filesystem;
    auto file = [&](const char* name) -> std::optional<fs::path> {
        auto p = dir / name;
        return fs::is_regular_file(p) ? std::optional(p) : std::nullopt;
    };
    auto folder = [&](const char* name) -> std::optional<fs::path> {
        auto p = dir / name;
        return fs::is_directory(p) ? std::optional(p) : std::nullopt;
    };
    FixturePaths p;
    switch (kind) {
    case ScenarioKind::combined:
        p.ite_dir = folder("ite");
        p.ine_dir = folder("ine");
        p.counts = file("counts_combined.csv");
        p.weights = file("weights_combined.csv");
        if (!p.ite_dir || !p.ine_dir || (!p.counts && !p.weights)) return std::nullopt;
        break;
    case ScenarioKind::annotated:
        p.ip_dir = folder("ip_annotated");
        p.counts = file("counts_annotated.csv");
        p.weights = file("weights_annotated.csv");
        if (!p.ip_dir || (!p.counts && !p.weights)) return std::nullopt;
        break;
    case ScenarioKind::numeric_only:
        p.ine_dir = folder("ine");
        p.counts = file("counts_numeric.csv");
        if (!p.ine_dir) return std::nullopt;
        break;
    case ScenarioKind::text_only:
        p.ite_dir = folder("ite");
        p.counts = file("counts_text.csv");
        p.weights = file("weights_text.csv");
        if (!p.ite_dir || (!p.counts && !p.weights)) return std::nullopt;
        break;
    }
    return p;
}

// --- pipeline ----------------------------------------------------------------

namespace {

template <class F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (Error& e) {
        e.set_stage(stage);
        throw;
    }
}

std::map<ExpertId, EvalMatrix> aggregate_individuals(const std::map<ExpertId, EvalMatrix>& ite,
                                                     const std::map<ExpertId, EvalMatrix>& ine,
                                                     const AggregationConfig& config) {
    std::set<ExpertId> experts;
    for (const auto& [e, m] : ite) experts.insert(e);
    for (const auto& [e, m] : ine) experts.insert(e);
    std::map<ExpertId, EvalMatrix> ip;
    for (const auto& e : experts) {
        auto t = ite.find(e);
        auto n = ine.find(e);
        if (t == ite.end() || n == ine.end()) {
            fail(ErrorKind::validation, "expert '" + e.value + "' has " + (t == ite.end() ? "no ITE" : "no INE") +
                                            " matrix");
        }
        ip.emplace(e, individual_aggregate(t->second, n->second, config));
    }
    return ip;
}

Weights complete_weights(Weights w, const std::vector<Criterion>& criteria) {
    for (const auto& c : criteria) w.try_emplace(c.id, 0.0);
    return w;
}

Counts complete_weights_counts(Counts counts, const std::vector<Criterion>& criteria) {
    for (const auto& [crit, n] : counts) {
        bool known = std::any_of(criteria.begin(), criteria.end(), [&](const Criterion& c) { return c.id == crit; });
        if (!known) fail(ErrorKind::schema, "count given for unknown criterion '" + crit.value + "'");
    }
    for (const auto& c : criteria) counts.try_emplace(c.id, 0);
    return counts;
}

void check_weights(const Weights& w) {
    AggregationConfig probe;
    probe.weight_mode = ExplicitWeights{w};
    probe.validate();
}

} // namespace

ScenarioReport run_scenario(const ScenarioSpec& spec, const ScenarioInputs& inputs) {
    const EngineConfig& config = spec.config;
    in_stage("config", [&] { config.aggregation.validate(); });

    ScenarioReport report;
    report.kind = spec.kind;
    report.inputs = inputs.files;
    report.config_json = config_to_json(config);

    Intermediates im;
    std::optional<Counts> counts;
    std::optional<Weights> weights;
    if (const auto* ex = std::get_if<ExplicitWeights>(&config.aggregation.weight_mode)) {
        weights = ex->weights;
    }
    const bool uses_text = spec.kind != ScenarioKind::numeric_only;
    const bool uses_ratings = spec.kind != ScenarioKind::text_only;

    if (const auto* corpus = std::get_if<CorpusInputs>(&inputs.data)) {
        const Dataset& ds = corpus->dataset;
        report.criteria = ds.criteria;
        report.warnings = ds.warnings;
        OpinionMap opinions;
        if (uses_text) {
            std::optional<OpinionSource> source;
            if (spec.kind == ScenarioKind::annotated) {
                source = OpinionSource::gold();
            } else if (corpus->opinions) {
                source = corpus->opinions;
            } else {
                in_stage("opinions", [&] {
                    fail(ErrorKind::usage, std::string(to_string(spec.kind)) + " needs an opinion file");
                });
            }
            opinions = in_stage("opinions", [&] { return collect_opinions(ds, *source, config.category_mapping); });
            im.ite = in_stage("textual evaluation", [&] {
                const auto alts = ds.alternative_ids();
                const auto crits = ds.criterion_ids();
                return build_ite(opinions, ds.experts, alts, crits, ds.scale);
            });
        } else if (corpus->opinions) {
            in_stage("opinions", [&] { fail(ErrorKind::usage, "numeric_only does not take an opinion source"); });
        }
        if (uses_ratings) {
            im.ine = in_stage("ingestion", [&] { return build_ine(ds); });
        }
        counts = in_stage("weighting", [&] {
            if (!uses_ratings) return count_opinions(opinions, ds.criteria);
            if (!uses_text) return count_ratings(im.ine, ds.criteria);
            return count_evaluations(opinions, im.ine, ds.criteria);
        });
    } else {
        const auto& fx = std::get<FixtureInputs>(inputs.data);
        report.criteria = config.criteria;
        in_stage("ingestion", [&] {
            if (!uses_ratings && !fx.ine.empty()) fail(ErrorKind::usage, "text_only does not take INE matrices");
            if (!uses_text && (!fx.ite.empty() || !fx.ip.empty()))
                fail(ErrorKind::usage, "numeric_only takes only INE matrices");
            if (!uses_ratings && !fx.ip.empty()) fail(ErrorKind::usage, "text_only takes only ITE matrices");
        });
        im.ite = fx.ite;
        im.ine = fx.ine;
        if (fx.counts) counts = fx.counts;
        if (!uses_text && !counts) {
            counts = in_stage("weighting", [&] { return count_ratings(fx.ine, config.criteria); });
        }
    }
    if (std::holds_alternative<FixtureInputs>(inputs.data)) {
        if (const auto& fw = std::get<FixtureInputs>(inputs.data).weights) weights = fw;
    }

    // individual aggregation
    im.ip = in_stage("individual aggregation", [&] {
        const auto* fx = std::get_if<FixtureInputs>(&inputs.data);
        if (fx && !fx->ip.empty()) return fx->ip;
        if (!uses_text) {
            if (im.ine.empty()) fail(ErrorKind::usage, "numeric_only needs INE matrices");
            return im.ine;
        }
        if (!uses_ratings) {
            if (im.ite.empty()) fail(ErrorKind::usage, "text_only needs ITE matrices");
            return im.ite;
        }
        if (im.ite.empty() || im.ine.empty()) {
            fail(ErrorKind::usage, std::string(to_string(spec.kind)) + " needs both ITE and INE matrices (or IPs)");
        }
        return aggregate_individuals(im.ite, im.ine, config.aggregation);
    });

    im.cp = in_stage("collective aggregation", [&] { return collective_aggregate(im.ip); });

    Weights w = in_stage("weighting", [&] {
        if (weights) {
            auto full = complete_weights(*weights, report.criteria);
            check_weights(full);
            return full;
        }
        if (!counts) {
            fail(ErrorKind::usage, std::string(to_string(spec.kind)) +
                                       " with attention weighting needs evaluation counts or explicit weights");
        }
        return attention_weights(complete_weights_counts(*counts, report.criteria));
    });

    auto fp = in_stage("exploitation", [&] { return exploit(*im.cp, w); });
    report.result = in_stage("ranking", [&] { return rank(fp); });
    report.result.weights = std::move(w);
    report.result.intermediates = std::move(im);
    for (const auto& alt : report.result.unrated) {
        report.warnings.push_back("alternative '" + alt.value + "' has no evaluations; ranked last");
    }
    for (const auto& group : report.result.ties) {
        std::string names;
        for (const auto& a : group) names += (names.empty() ? "" : ", ") + a.value;
        report.warnings.push_back("tied preference values: " + names);
    }
    return report;
}

} // namespace revdecide
