#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "revdecide/core.hpp"
#include "revdecide/eval_matrix.hpp"
#include "revdecide/ingestion.hpp"

namespace revdecide {

/// Where opinions come from: the dataset's own gold annotations, or a
/// line-delimited exchange file written by an external extractor.
class OpinionSource {
public:
    struct Gold {};
    struct External {
        std::filesystem::path path;
    };

    static OpinionSource gold() { return OpinionSource(Gold{}); }
    static OpinionSource external(std::filesystem::path path) { return OpinionSource(External{std::move(path)}); }

    bool is_gold() const noexcept { return std::holds_alternative<Gold>(variant_); }
    const std::filesystem::path* external_path() const noexcept;
    std::string describe() const;

private:
    explicit OpinionSource(std::variant<Gold, External> v) : variant_(std::move(v)) {}
    std::variant<Gold, External> variant_;
};

/// A parsed exchange line before it has been checked against a dataset.
struct ExchangeRecord {
    std::size_t line = 0;
    LabeledOpinion opinion;
};

std::vector<ExchangeRecord> read_exchange(std::istream& in);
std::vector<ExchangeRecord> read_exchange_file(const std::filesystem::path& path);

void write_exchange(std::ostream& out, std::span<const Opinion> opinions);
std::string exchange_line(const Opinion& opinion);

/// Groups opinions by review. Every (expert, alternative) pair of the
/// dataset gets a key; opinions within a review are ordered by sentence
/// index and then by their original order. External labels that are not
/// criterion ids go through `mapping`.
OpinionMap collect_opinions(const Dataset& dataset, const OpinionSource& source,
                            const CategoryMapping& mapping = {});

/// Same as above for records already in memory.
OpinionMap group_opinions(const Dataset& dataset, const std::vector<ExchangeRecord>& records,
                          const CategoryMapping& mapping = {});

/// Opinions in emission order: dataset expert order, then alternative order,
/// then the per-review order of `collect_opinions`.
std::vector<Opinion> flatten(const Dataset& dataset, const OpinionMap& opinions);

Counts count_opinions(const OpinionMap& opinions, const std::vector<Criterion>& criteria);
Counts count_ratings(const std::map<ExpertId, EvalMatrix>& ine, const std::vector<Criterion>& criteria);

/// Opinions per category plus present INE cells per column.
Counts count_evaluations(const OpinionMap& opinions, const std::map<ExpertId, EvalMatrix>& ine,
                         const std::vector<Criterion>& criteria);

} // namespace revdecide
