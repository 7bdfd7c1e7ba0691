#include "revdecide/eval_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "revdecide/error.hpp"

namespace revdecide {

namespace {

std::optional<double> checked(std::optional<double> value, const Scale& scale, const std::string& where) {
    if (!value) {
        return value;
    }
    const double tau = scale.tau();
    const double v = *value;
    if (std::isnan(v) || std::abs(v) > tau + kRangeSlack) {
        std::ostringstream msg;
        msg << "value " << v << " at " << where << " outside [-" << tau << ", " << tau << "]";
        fail(ErrorKind::range, msg.str());
    }
    return std::clamp(v, -tau, tau);
}

template <class T>
void require_unique(const std::vector<T>& labels, const char* what) {
    std::set<T> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            fail(ErrorKind::duplication, std::string("duplicate ") + what + " label '" + l.value + "'");
        }
    }
}

} // namespace

EvalMatrix::EvalMatrix(std::vector<AlternativeId> rows, std::vector<CriterionId> cols, Scale scale)
    : rows_(std::move(rows)), cols_(std::move(cols)), scale_(scale), cells_(rows_.size() * cols_.size()) {
    require_unique(rows_, "alternative");
    require_unique(cols_, "criterion");
}

std::size_t EvalMatrix::row_index(const AlternativeId& alt) const {
    auto it = std::find(rows_.begin(), rows_.end(), alt);
    if (it == rows_.end()) {
        fail(ErrorKind::lookup, "unknown alternative '" + alt.value + "'");
    }
    return static_cast<std::size_t>(it - rows_.begin());
}

std::size_t EvalMatrix::col_index(const CriterionId& crit) const {
    auto it = std::find(cols_.begin(), cols_.end(), crit);
    if (it == cols_.end()) {
        fail(ErrorKind::lookup, "unknown criterion '" + crit.value + "'");
    }
    return static_cast<std::size_t>(it - cols_.begin());
}

std::optional<double> EvalMatrix::get(const AlternativeId& alt, const CriterionId& crit) const {
    return cells_[row_index(alt) * cols_.size() + col_index(crit)];
}

void EvalMatrix::set(const AlternativeId& alt, const CriterionId& crit, std::optional<double> value) {
    set_at(row_index(alt), col_index(crit), value);
}

std::optional<double> EvalMatrix::at(std::size_t row, std::size_t col) const {
    if (row >= rows_.size() || col >= cols_.size()) {
        fail(ErrorKind::lookup, "cell index out of bounds");
    }
    return cells_[row * cols_.size() + col];
}

void EvalMatrix::set_at(std::size_t row, std::size_t col, std::optional<double> value) {
    if (row >= rows_.size() || col >= cols_.size()) {
        fail(ErrorKind::lookup, "cell index out of bounds");
    }
    cells_[row * cols_.size() + col] = checked(value, scale_, "(" + rows_[row].value + ", " + cols_[col].value + ")");
}

std::size_t EvalMatrix::present_in_column(std::size_t col) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        n += at(r, col).has_value() ? 1 : 0;
    }
    return n;
}

std::size_t EvalMatrix::present_count() const {
    return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](auto& c) { return c.has_value(); }));
}

bool EvalMatrix::same_labels(const EvalMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
}

PreferenceVector::PreferenceVector(std::vector<AlternativeId> alternatives, std::vector<std::optional<double>> values,
                                   Scale scale)
    : alternatives_(std::move(alternatives)), values_(std::move(values)), scale_(scale) {
    if (alternatives_.size() != values_.size()) {
        fail(ErrorKind::validation, "preference vector has mismatched label and value counts");
    }
    require_unique(alternatives_, "alternative");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] = checked(values_[i], scale_, alternatives_[i].value);
    }
}

std::optional<double> PreferenceVector::get(const AlternativeId& alt) const {
    auto it = std::find(alternatives_.begin(), alternatives_.end(), alt);
    if (it == alternatives_.end()) {
        fail(ErrorKind::lookup, "unknown alternative '" + alt.value + "'");
    }
    return values_[static_cast<std::size_t>(it - alternatives_.begin())];
}

} // namespace revdecide
