#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "revdecide/aggregation.hpp"
#include "revdecide/core.hpp"
#include "revdecide/eval_matrix.hpp"
#include "revdecide/ingestion.hpp"
#include "revdecide/opinion_sources.hpp"

namespace revdecide {

enum class ScenarioKind {
    combined,     // predicted opinions + ratings
    annotated,    // gold opinions + ratings
    numeric_only, // ratings only
    text_only,    // predicted opinions only
};

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view text);
/// Row label used in summary tables.
std::string_view table_label(ScenarioKind kind);
/// The four scenarios in summary-table order.
std::vector<ScenarioKind> all_scenarios();

/// Engine-wide settings. Defaults reproduce the restaurant case study:
/// tau = 2, six criteria, equal ITE/INE weight, attention weighting.
struct EngineConfig {
    Scale scale{2};
    std::vector<Criterion> criteria = default_restaurant_criteria();
    AggregationConfig aggregation;
    CategoryMapping category_mapping = CategoryMapping::semeval_restaurants();

    static EngineConfig defaults() { return {}; }
};

EngineConfig parse_config(std::string_view json_text);
EngineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const EngineConfig& config);

struct CorpusInputs {
    Dataset dataset;
    /// Extractor output. Required for combined and text_only, forbidden for
    /// numeric_only, ignored by annotated (which reads the gold opinions).
    std::optional<OpinionSource> opinions;
};

struct FixtureInputs {
    std::map<ExpertId, EvalMatrix> ite;
    std::map<ExpertId, EvalMatrix> ine;
    std::map<ExpertId, EvalMatrix> ip; // precomputed IPs skip individual aggregation
    std::optional<Counts> counts;
    std::optional<Weights> weights; // overrides the config's weight mode
};

struct InputFile {
    std::string path;
    std::string sha256;

    friend bool operator==(const InputFile&, const InputFile&) = default;
};

struct ScenarioInputs {
    std::variant<CorpusInputs, FixtureInputs> data;
    std::vector<InputFile> files;
};

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::combined;
    EngineConfig config;
};

struct ScenarioReport {
    ScenarioKind kind = ScenarioKind::combined;
    std::vector<Criterion> criteria;
    RankedResult result;
    std::vector<InputFile> inputs;
    std::string config_json;
    std::vector<std::string> warnings;

    const Weights& weights() const noexcept { return result.weights; }
    const PreferenceVector& fp() const noexcept { return result.fp; }

    friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

/// ingestion -> opinions -> ITE -> IP -> CP -> weights -> FP -> ranking.
/// Errors are rethrown with the failing stage attached.
ScenarioReport run_scenario(const ScenarioSpec& spec, const ScenarioInputs& inputs);

// Input loading with provenance.

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

ScenarioInputs load_corpus_inputs(const std::filesystem::path& corpus,
                                  const std::optional<std::filesystem::path>& opinions, ValidationMode mode);

struct FixturePaths {
    std::optional<std::filesystem::path> ite_dir;
    std::optional<std::filesystem::path> ine_dir;
    std::optional<std::filesystem::path> ip_dir;
    std::optional<std::filesystem::path> counts;
    std::optional<std::filesystem::path> weights;
};

ScenarioInputs load_fixture_inputs(const FixturePaths& paths, const EngineConfig& config);

/// Conventional layout of a fixture directory used for batch runs:
///   ite/ ine/ ip_annotated/ counts_combined.csv counts_text.csv weights_annotated.csv
/// Returns nullopt when the files a scenario needs are missing.
std::optional<FixturePaths> fixture_layout(const std::filesystem::path& dir, ScenarioKind kind);

// Reports.

enum class ReportFormat { json, csv, markdown };

ReportFormat parse_report_format(std::string_view text);

struct EmitOptions {
    bool summary = false; // fp and ranking only
};

std::string emit_report(const ScenarioReport& report, ReportFormat format, EmitOptions options = {});
std::string emit_batch(const std::vector<ScenarioReport>& reports, ReportFormat format, EmitOptions options = {});

ScenarioReport parse_report_json(std::string_view json_text);

/// What the CSV report carries, read back.
struct ReportTable {
    ScenarioKind kind = ScenarioKind::combined;
    std::vector<std::pair<CriterionId, double>> weights;
    std::vector<std::pair<AlternativeId, std::optional<double>>> fp;
    std::vector<AlternativeId> order;
};

std::vector<ReportTable> parse_report_csv(std::string_view csv_text);

/// "x2 > x1 > x3 > x4"
std::string ranking_string(const RankedResult& result);

/// 6 significant digits, the precision reports are written at.
double report_precision(double value);

} // namespace revdecide
