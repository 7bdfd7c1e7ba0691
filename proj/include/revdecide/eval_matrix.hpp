#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "revdecide/core.hpp"

namespace revdecide {

/// Alternatives x criteria grid of optional values on a Scale. NA cells are
/// `std::nullopt`; present values always lie in [-tau, tau].
class EvalMatrix {
public:
    EvalMatrix() = default;
    EvalMatrix(std::vector<AlternativeId> rows, std::vector<CriterionId> cols, Scale scale);

    const std::vector<AlternativeId>& rows() const noexcept { return rows_; }
    const std::vector<CriterionId>& cols() const noexcept { return cols_; }
    const Scale& scale() const noexcept { return scale_; }
    std::size_t row_count() const noexcept { return rows_.size(); }
    std::size_t col_count() const noexcept { return cols_.size(); }

    std::size_t row_index(const AlternativeId& alt) const;
    std::size_t col_index(const CriterionId& crit) const;

    std::optional<double> get(const AlternativeId& alt, const CriterionId& crit) const;
    void set(const AlternativeId& alt, const CriterionId& crit, std::optional<double> value);

    std::optional<double> at(std::size_t row, std::size_t col) const;
    void set_at(std::size_t row, std::size_t col, std::optional<double> value);

    std::size_t present_in_column(std::size_t col) const;
    std::size_t present_count() const;

    bool same_labels(const EvalMatrix& other) const noexcept;

    friend bool operator==(const EvalMatrix&, const EvalMatrix&) = default;

private:
    std::vector<AlternativeId> rows_;
    std::vector<CriterionId> cols_;
    Scale scale_;
    std::vector<std::optional<double>> cells_;
};

/// Final preference per alternative, NA for alternatives with nothing to
/// aggregate.
class PreferenceVector {
public:
    PreferenceVector() = default;
    PreferenceVector(std::vector<AlternativeId> alternatives, std::vector<std::optional<double>> values,
                     Scale scale);

    const std::vector<AlternativeId>& alternatives() const noexcept { return alternatives_; }
    const std::vector<std::optional<double>>& values() const noexcept { return values_; }
    const Scale& scale() const noexcept { return scale_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::optional<double> get(const AlternativeId& alt) const;

    friend bool operator==(const PreferenceVector&, const PreferenceVector&) = default;

private:
    std::vector<AlternativeId> alternatives_;
    std::vector<std::optional<double>> values_;
    Scale scale_;
};

/// Values within this distance of the scale bound are clamped onto it, so
/// rounding in convex combinations does not trip the range check.
inline constexpr double kRangeSlack = 1e-9;

} // namespace revdecide
