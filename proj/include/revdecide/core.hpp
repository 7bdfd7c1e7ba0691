#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revdecide {

/// Opaque string identifier, tagged so expert, alternative and criterion ids
/// cannot be mixed up.
template <class Tag>
struct Id {
    std::string value;

    Id() = default;
    explicit Id(std::string v) : value(std::move(v)) {}
    explicit Id(const char* v) : value(v) {}

    friend auto operator<=>(const Id&, const Id&) = default;
    friend bool operator==(const Id&, const Id&) = default;
};

struct ExpertTag {};
struct AlternativeTag {};
struct CriterionTag {};

using ExpertId = Id<ExpertTag>;
using AlternativeId = Id<AlternativeTag>;
using CriterionId = Id<CriterionTag>;

struct Criterion {
    CriterionId id;
    std::string display_name;

    friend bool operator==(const Criterion&, const Criterion&) = default;
};

/// The six criteria of the restaurant case study, in column order.
std::vector<Criterion> default_restaurant_criteria();

std::vector<CriterionId> criterion_ids(const std::vector<Criterion>& criteria);

enum class Polarity { positive, negative, neutral };

std::string_view to_string(Polarity p);

/// Accepts `positive|negative|neutral`, case-insensitive. `conflict` is read
/// as neutral since only positive and negative opinions move a score.
Polarity parse_polarity(std::string_view text);

/// Symmetric intensity scale with 2*tau+1 levels and values in [-tau, tau].
class Scale {
public:
    explicit Scale(int tau = 2);

    int tau() const noexcept { return tau_; }
    int levels() const noexcept { return 2 * tau_ + 1; }

    /// Maps a rating level in 1..2tau+1 onto -tau..tau. `context` names the
    /// offending review in the error message.
    double level_to_value(int level, std::string_view context = {}) const;

    bool contains(double value) const noexcept;

    friend bool operator==(const Scale&, const Scale&) = default;

private:
    int tau_;
};

inline double level_to_value(int level, const Scale& scale, std::string_view context = {}) {
    return scale.level_to_value(level, context);
}

struct Opinion {
    ExpertId expert;
    AlternativeId alternative;
    std::size_t sentence_index = 0;
    std::optional<std::string> aspect_term; // absent for implicit aspects
    CriterionId category;
    Polarity polarity = Polarity::neutral;

    friend bool operator==(const Opinion&, const Opinion&) = default;
};

struct Review {
    ExpertId expert;
    AlternativeId alternative;
    std::string title;
    std::string body;
    /// Sentence 0 is the title; body sentences follow from index 1.
    std::vector<std::string> sentences;
    std::map<CriterionId, std::optional<int>> ratings;

    std::size_t sentence_count() const noexcept { return sentences.size(); }

    friend bool operator==(const Review&, const Review&) = default;
};

using ReviewKey = std::pair<ExpertId, AlternativeId>;
using OpinionMap = std::map<ReviewKey, std::vector<Opinion>>;

using Counts = std::map<CriterionId, long long>;
using Weights = std::map<CriterionId, double>;

std::string describe(const ReviewKey& key);

} // namespace revdecide

template <class Tag>
struct std::hash<revdecide::Id<Tag>> {
    std::size_t operator()(const revdecide::Id<Tag>& id) const noexcept {
        return std::hash<std::string>{}(id.value);
    }
};
