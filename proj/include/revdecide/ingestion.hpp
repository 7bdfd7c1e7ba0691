#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revdecide/core.hpp"
#include "revdecide/eval_matrix.hpp"

namespace revdecide {

enum class ValidationMode {
    complete, // every (expert, alternative) pair must have a review
    lenient,  // missing pairs are warned about and read as all-NA
};

struct Alternative {
    AlternativeId id;
    std::string name;

    friend bool operator==(const Alternative&, const Alternative&) = default;
};

struct Dataset {
    std::vector<ExpertId> experts;
    std::vector<Alternative> alternatives;
    std::vector<Criterion> criteria;
    Scale scale;
    std::vector<Review> reviews;
    std::optional<std::vector<Opinion>> gold_opinions;
    std::vector<std::string> warnings;

    std::vector<AlternativeId> alternative_ids() const;
    std::vector<CriterionId> criterion_ids() const;
    const Review* find_review(const ExpertId& expert, const AlternativeId& alt) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Checks the structural invariants of an in-memory dataset and fills in
/// `warnings`. Throws on any violation.
void validate_dataset(Dataset& dataset, ValidationMode mode);

Dataset parse_dataset(std::string_view json_text, ValidationMode mode = ValidationMode::complete);
Dataset load_dataset(const std::filesystem::path& path, ValidationMode mode = ValidationMode::complete);

/// Splits on sentence-final punctuation followed by whitespace.
std::vector<std::string> split_sentences(std::string_view text);

/// External category label (e.g. FOOD#QUALITY) to criterion id.
class CategoryMapping {
public:
    CategoryMapping() = default;
    explicit CategoryMapping(std::map<std::string, CriterionId> table) : table_(std::move(table)) {}

    /// Entity-level collapse of the SemEval-2016 restaurant schema.
    static CategoryMapping semeval_restaurants();

    void add(std::string label, CriterionId criterion);
    std::optional<CriterionId> find(std::string_view label) const;
    const CriterionId& map(std::string_view label) const;
    const std::map<std::string, CriterionId>& table() const noexcept { return table_; }
    bool empty() const noexcept { return table_.empty(); }

private:
    std::map<std::string, CriterionId> table_;
};

/// An opinion whose category is still an external label.
struct LabeledOpinion {
    ExpertId expert;
    AlternativeId alternative;
    std::size_t sentence_index = 0;
    std::optional<std::string> aspect_term;
    std::string category_label;
    Polarity polarity = Polarity::neutral;
};

std::vector<Opinion> map_categories(const std::vector<LabeledOpinion>& raw, const CategoryMapping& mapping);

// CSV fixtures. Matrices: header row of criterion ids, first column of
// alternative ids, cells are decimals or NA. Counts and FP vectors are
// two-column `label,value` tables with a header row.

EvalMatrix parse_matrix_csv(std::string_view text, const std::vector<Criterion>& known, const Scale& scale);
EvalMatrix load_matrix_fixture(const std::filesystem::path& path, const std::vector<Criterion>& known,
                               const Scale& scale);
std::string write_matrix_csv(const EvalMatrix& matrix);

Counts parse_counts_csv(std::string_view text, const std::vector<Criterion>& known);
Counts load_counts_fixture(const std::filesystem::path& path, const std::vector<Criterion>& known);
std::string write_counts_csv(const Counts& counts, const std::vector<Criterion>& order);

Weights parse_weights_csv(std::string_view text, const std::vector<Criterion>& known);
Weights load_weights_fixture(const std::filesystem::path& path, const std::vector<Criterion>& known);

PreferenceVector parse_fp_csv(std::string_view text, const Scale& scale);
PreferenceVector load_fp_file(const std::filesystem::path& path, const Scale& scale);
std::string write_fp_csv(const PreferenceVector& fp);

/// Loads every `<expert>.csv` in a directory, keyed by file stem.
std::map<ExpertId, EvalMatrix> load_matrix_dir(const std::filesystem::path& dir, const std::vector<Criterion>& known,
                                               const Scale& scale);

/// One INE matrix per expert: present ratings mapped onto the scale, NA
/// elsewhere, including criteria that were never ratable.
std::map<ExpertId, EvalMatrix> build_ine(const Dataset& dataset);

std::string read_text_file(const std::filesystem::path& path);

} // namespace revdecide
