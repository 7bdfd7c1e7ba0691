#pragma once

#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "revdecide/core.hpp"
#include "revdecide/eval_matrix.hpp"

namespace revdecide {

struct AttentionWeights {};
struct ExplicitWeights {
    Weights weights;
};
using WeightMode = std::variant<AttentionWeights, ExplicitWeights>;

struct AggregationConfig {
    double omega_ite = 0.5;
    double omega_ine = 0.5;
    WeightMode weight_mode = AttentionWeights{};

    /// omega_ite + omega_ine = 1, both in [0, 1]; explicit weights are
    /// non-negative and sum to 1.
    void validate() const;
};

/// Textual evaluation of one review: for each criterion with at least one
/// opinion, tau * (#positive - #negative) / #opinions, NA otherwise.
std::vector<std::optional<double>> compute_ite(std::span<const Opinion> opinions,
                                               std::span<const CriterionId> criteria, const Scale& scale);

/// ITE matrix per expert from grouped opinions.
std::map<ExpertId, EvalMatrix> build_ite(const OpinionMap& opinions, std::span<const ExpertId> experts,
                                         std::span<const AlternativeId> alternatives,
                                         std::span<const CriterionId> criteria, const Scale& scale);

/// Convex combination of textual and numerical evaluations. An operand that
/// is NA or carries zero weight drops out and the other one takes the full
/// weight.
EvalMatrix individual_aggregate(const EvalMatrix& ite, const EvalMatrix& ine, const AggregationConfig& config);

/// Cell-wise arithmetic mean over the experts that evaluated the cell.
EvalMatrix collective_aggregate(const std::map<ExpertId, EvalMatrix>& ips);
EvalMatrix collective_aggregate(std::span<const EvalMatrix> ips);

/// Share of all evaluations that each criterion received.
Weights attention_weights(const Counts& counts);

/// Weighted sum of each CP row. NA cells contribute nothing and the weights
/// are not renormalised; an all-NA row gives an NA preference.
PreferenceVector exploit(const EvalMatrix& cp, const Weights& weights);

struct Intermediates {
    std::map<ExpertId, EvalMatrix> ite;
    std::map<ExpertId, EvalMatrix> ine;
    std::map<ExpertId, EvalMatrix> ip;
    std::optional<EvalMatrix> cp;

    friend bool operator==(const Intermediates&, const Intermediates&) = default;
};

inline constexpr double kTieTolerance = 1e-9;

struct RankedResult {
    PreferenceVector fp;
    std::vector<AlternativeId> order;             // best first, NA entries last
    std::vector<std::vector<AlternativeId>> ties; // groups with equal fp
    std::vector<AlternativeId> unrated;           // alternatives with NA fp
    Weights weights;
    Intermediates intermediates;

    friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

/// Orders by fp descending. Ties within kTieTolerance fall back to id order
/// and are reported in `ties`.
RankedResult rank(const PreferenceVector& fp);

} // namespace revdecide
