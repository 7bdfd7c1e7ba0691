#include "revdecide/core.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "revdecide/error.hpp"

namespace revdecide {

std::vector<Criterion> default_restaurant_criteria() {
    return {
        {CriterionId("restaurant"), "Restaurant"}, {CriterionId("food"), "Food"},
        {CriterionId("service"), "Service"},       {CriterionId("drinks"), "Drinks"},
        {CriterionId("ambience"), "Ambience"},     {CriterionId("location"), "Location"},
    };
}

std::vector<CriterionId> criterion_ids(const std::vector<Criterion>& criteria) {
    std::vector<CriterionId> ids;
    ids.reserve(criteria.size());
    for (const auto& c : criteria) {
        ids.push_back(c.id);
    }
    return ids;
}

std::string_view to_string(Polarity p) {
    switch (p) {
    case Polarity::positive: return "positive";
    case Polarity::negative: return "negative";
    case Polarity::neutral: return "neutral";
    }
    return "neutral";
}

Polarity parse_polarity(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "positive") return Polarity::positive;
    if (lower == "negative") return Polarity::negative;
    if (lower == "neutral" || lower == "conflict") return Polarity::neutral;
    fail(ErrorKind::validation, "unknown polarity '" + std::string(text) + "'");
}

Scale::Scale(int tau) : tau_(tau) {
    if (tau < 1) {
        fail(ErrorKind::validation, "tau must be a positive integer, got " + std::to_string(tau));
    }
}

double Scale::level_to_value(int level, std::string_view context) const {
    if (level < 1 || level > levels()) {
        std::string msg = "rating level " + std::to_string(level) + " outside 1.." + std::to_string(levels());
        if (!context.empty()) {
            msg += " in review ";
            msg += context;
        }
        fail(ErrorKind::range, std::move(msg));
    }
    return static_cast<double>(level - (tau_ + 1));
}

bool Scale::contains(double value) const noexcept {
    return value >= -static_cast<double>(tau_) && value <= static_cast<double>(tau_);
}

std::string describe(const ReviewKey& key) { return "(" + key.first.value + ", " + key.second.value + ")"; }

} // namespace revdecide
