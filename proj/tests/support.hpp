#pragma once

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revdecide/scenario.hpp"

namespace testsupport {

inline std::filesystem::path fixture_dir() { return std::filesystem::path(REVDECIDE_FIXTURE_DIR) / "tripr"; }
inline std::filesystem::path corpus_path() { return fixture_dir() / "tripr_corpus.json"; }
inline std::filesystem::path predicted_path() { return fixture_dir() / "tripr_predicted.jsonl"; }

inline revdecide::AlternativeId alt(const char* s) { return revdecide::AlternativeId(s); }
inline revdecide::CriterionId crit(const char* s) { return revdecide::CriterionId(s); }
inline revdecide::ExpertId expert(const char* s) { return revdecide::ExpertId(s); }

inline std::vector<revdecide::AlternativeId> alts(std::initializer_list<const char*> ids) {
    std::vector<revdecide::AlternativeId> out;
    for (auto* s : ids) out.emplace_back(s);
    return out;
}

inline std::vector<revdecide::CriterionId> crits(std::initializer_list<const char*> ids) {
    std::vector<revdecide::CriterionId> out;
    for (auto* s : ids) out.emplace_back(s);
    return out;
}

inline const std::vector<revdecide::CriterionId>& six() {
    static const auto ids = revdecide::criterion_ids(revdecide::default_restaurant_criteria());
    return ids;
}

inline std::optional<double> na() { return std::nullopt; }

/// One row per alternative, NaN for NA.
inline revdecide::EvalMatrix matrix(const std::vector<std::vector<double>>& rows, int tau = 2) {
    std::vector<revdecide::AlternativeId> r;
    for (std::size_t i = 0; i < rows.size(); ++i) r.emplace_back("x" + std::to_string(i + 1));
    std::vector<revdecide::CriterionId> c(six().begin(), six().begin() + rows.front().size());
    revdecide::EvalMatrix m(r, c, revdecide::Scale(tau));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (!std::isnan(rows[i][j])) m.set_at(i, j, rows[i][j]);
    return m;
}

inline std::string ranking_of(const revdecide::RankedResult& r) {
    std::string s;
    for (const auto& a : r.order) s += (s.empty() ? "" : ">") + a.value;
    return s;
}

} // namespace testsupport
