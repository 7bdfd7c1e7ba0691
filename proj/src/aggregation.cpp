#include "revdecide/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "revdecide/error.hpp"

namespace revdecide {

void AggregationConfig::validate() const {
    auto in_unit = [](double w) { return w >= 0.0 && w <= 1.0; };
    if (!in_unit(omega_ite) || !in_unit(omega_ine) || std::abs(omega_ite + omega_ine - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "omega_ite and omega_ine must lie in [0, 1] and sum to 1 (got " << omega_ite << " + " << omega_ine << ")";
        fail(ErrorKind::validation, msg.str());
    }
    if (const auto* ex = std::get_if<ExplicitWeights>(&weight_mode)) {
        double sum = 0.0;
        for (const auto& [crit, w] : ex->weights) {
            if (!(w >= 0.0)) {
                fail(ErrorKind::validation, "explicit weight for '" + crit.value + "' is negative");
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "explicit weights sum to " << sum << ", expected 1";
            fail(ErrorKind::validation, msg.str());
        }
    }
}

std::vector<std::optional<double>> compute_ite(std::span<const Opinion> opinions,
                                               std::span<const CriterionId> criteria, const Scale& scale) {
    struct Tally {
        long long pos = 0;
        long long neg = 0;
        long long total = 0;
    };
    std::vector<Tally> tally(criteria.size());
    for (const auto& op : opinions) {
        if (op.expert != opinions.front().expert || op.alternative != opinions.front().alternative) {
            fail(ErrorKind::validation, "compute_ite expects the opinions of a single review");
        }
        auto it = std::find(criteria.begin(), criteria.end(), op.category);
        if (it == criteria.end()) {
            fail(ErrorKind::mapping, "opinion category '" + op.category.value + "' is not a criterion");
        }
        auto& t = tally[static_cast<std::size_t>(it - criteria.begin())];
        ++t.total;
        if (op.polarity == Polarity::positive) ++t.pos;
        if (op.polarity == Polarity::negative) ++t.neg;
    }
    std::vector<std::optional<double>> row(criteria.size());
    for (std::size_t j = 0; j < criteria.size(); ++j) {
        const auto& t = tally[j];
        if (t.total > 0) {
            row[j] = static_cast<double>(scale.tau() * (t.pos - t.neg)) / static_cast<double>(t.total);
        }
    }
    return row;
}

std::map<ExpertId, EvalMatrix> build_ite(const OpinionMap& opinions, std::span<const ExpertId> experts,
                                         std::span<const AlternativeId> alternatives,
                                         std::span<const CriterionId> criteria, const Scale& scale) {
    std::vector<AlternativeId> rows(alternatives.begin(), alternatives.end());
    std::vector<CriterionId> cols(criteria.begin(), criteria.end());
    std::map<ExpertId, EvalMatrix> out;
    for (const auto& e : experts) {
        EvalMatrix m(rows, cols, scale);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto it = opinions.find({e, rows[r]});
            if (it == opinions.end()) {
                continue;
            }
            auto values = compute_ite(it->second, criteria, scale);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                m.set_at(r, c, values[c]);
            }
        }
        out.emplace(e, std::move(m));
    }
    return out;
}

EvalMatrix individual_aggregate(const EvalMatrix& ite, const EvalMatrix& ine, const AggregationConfig& config) {
    config.validate();
    if (!ite.same_labels(ine) || !(ite.scale() == ine.scale())) {
        fail(ErrorKind::validation, "ITE and INE matrices do not share labels and scale");
    }
    EvalMatrix ip(ite.rows(), ite.cols(), ite.scale());
    for (std::size_t r = 0; r < ite.row_count(); ++r) {
        for (std::size_t c = 0; c < ite.col_count(); ++c) {
            auto text = config.omega_ite > 0.0 ? ite.at(r, c) : std::nullopt;
            auto numeric = config.omega_ine > 0.0 ? ine.at(r, c) : std::nullopt;
            if (text && numeric) {
                ip.set_at(r, c, config.omega_ite * *text + config.omega_ine * *numeric);
            } else if (text) {
                ip.set_at(r, c, text);
            } else if (numeric) {
                ip.set_at(r, c, numeric);
            }
        }
    }
    return ip;
}

EvalMatrix collective_aggregate(std::span<const EvalMatrix> ips) {
    if (ips.empty()) {
        fail(ErrorKind::usage, "collective aggregation needs at least one expert");
    }
    const auto& first = ips.front();
    for (const auto& m : ips) {
        if (!m.same_labels(first) || !(m.scale() == first.scale())) {
            fail(ErrorKind::validation, "IP matrices do not share labels and scale");
        }
    }
    EvalMatrix cp(first.rows(), first.cols(), first.scale());
    std::vector<double> present;
    for (std::size_t r = 0; r < first.row_count(); ++r) {
        for (std::size_t c = 0; c < first.col_count(); ++c) {
            present.clear();
            for (const auto& m : ips) {
                if (auto v = m.at(r, c)) present.push_back(*v);
            }
            if (present.empty()) {
                continue;
            }
            // summed in sorted order so the mean does not depend on expert order
            std::sort(present.begin(), present.end());
            double sum = 0.0;
            for (double v : present) sum += v;
            cp.set_at(r, c, sum / static_cast<double>(present.size()));
        }
    }
    return cp;
}

EvalMatrix collective_aggregate(const std::map<ExpertId, EvalMatrix>& ips) {
    std::vector<EvalMatrix> list;
    list.reserve(ips.size());
    for (const auto& [expert, m] : ips) list.push_back(m);
    return collective_aggregate(std::span<const EvalMatrix>(list));
}

Weights attention_weights(const Counts& counts) {
    long long total = 0;
    for (const auto& [crit, n] : counts) {
        if (n < 0) fail(ErrorKind::validation, "negative evaluation count for '" + crit.value + "'");
        total += n;
    }
    if (total == 0) {
        fail(ErrorKind::degenerate_input, "no criterion has any evaluation; weights are undefined");
    }
    Weights w;
    for (const auto& [crit, n] : counts) {
        w[crit] = static_cast<double>(n) / static_cast<double>(total);
    }
    return w;
}

PreferenceVector exploit(const EvalMatrix& cp, const Weights& weights) {
    std::vector<double> w(cp.col_count());
    double sum = 0.0;
    for (std::size_t c = 0; c < cp.col_count(); ++c) {
        auto it = weights.find(cp.cols()[c]);
        if (it == weights.end()) {
            fail(ErrorKind::lookup, "no weight for criterion '" + cp.cols()[c].value + "'");
        }
        if (!(it->second >= 0.0 && it->second <= 1.0)) {
            fail(ErrorKind::validation, "weight for '" + it->first.value + "' outside [0, 1]");
        }
        w[c] = it->second;
        sum += it->second;
    }
    for (const auto& [crit, value] : weights) {
        if (value != 0.0 && std::find(cp.cols().begin(), cp.cols().end(), crit) == cp.cols().end()) {
            fail(ErrorKind::lookup, "weight given for criterion '" + crit.value + "' not in the matrix");
        }
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "criteria weights sum to " << sum << ", expected 1";
        fail(ErrorKind::validation, msg.str());
    }
    std::vector<std::optional<double>> fp(cp.row_count());
    for (std::size_t r = 0; r < cp.row_count(); ++r) {
        bool any = false;
        double acc = 0.0;
        for (std::size_t c = 0; c < cp.col_count(); ++c) {
            if (auto v = cp.at(r, c)) {
                acc += w[c] * *v;
                any = true;
            }
        }
        if (any) fp[r] = acc;
    }
    return PreferenceVector(cp.rows(), std::move(fp), cp.scale());
}

RankedResult rank(const PreferenceVector& fp) {
    if (fp.size() == 0) {
        fail(ErrorKind::usage, "cannot rank an empty preference vector");
    }
    struct Entry {
        AlternativeId id;
        double value;
    };
    std::vector<Entry> rated;
    std::vector<AlternativeId> unrated;
    for (std::size_t i = 0; i < fp.size(); ++i) {
        if (fp.values()[i]) {
            rated.push_back({fp.alternatives()[i], *fp.values()[i]});
        } else {
            unrated.push_back(fp.alternatives()[i]);
        }
    }
    if (rated.empty()) {
        fail(ErrorKind::usage, "no alternative has a preference value");
    }
    std::sort(rated.begin(), rated.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.id < b.id;
    });

    RankedResult result;
    result.fp = fp;
    for (std::size_t start = 0; start < rated.size();) {
        std::size_t end = start + 1;
        while (end < rated.size() && std::abs(rated[start].value - rated[end].value) <= kTieTolerance) {
            ++end;
        }
        std::vector<AlternativeId> group;
        for (std::size_t i = start; i < end; ++i) group.push_back(rated[i].id);
        std::sort(group.begin(), group.end());
        result.order.insert(result.order.end(), group.begin(), group.end());
        if (group.size() > 1) {
            result.ties.push_back(std::move(group));
        }
        start = end;
    }
    std::sort(unrated.begin(), unrated.end());
    result.order.insert(result.order.end(), unrated.begin(), unrated.end());
    result.unrated = std::move(unrated);
    return result;
}

} // namespace revdecide
