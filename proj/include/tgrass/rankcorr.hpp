#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgrass/linalg.hpp"

namespace tgrass {

/// n x p observation matrix stored column-major; columns are the variables.
class DataMatrix {
public:
    DataMatrix(std::size_t n, std::size_t p, std::vector<double> column_major,
               std::optional<std::vector<std::string>> labels = std::nullopt);
    /// Builds from row-major observations (row i is observation i).
    static DataMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                std::optional<std::vector<std::string>> labels = std::nullopt);

    std::size_t n() const noexcept { return n_; }
    std::size_t p() const noexcept { return p_; }
    std::span<const double> column(std::size_t j) const noexcept { return {values_.data() + j * n_, n_}; }
    std::span<double> column(std::size_t j) noexcept { return {values_.data() + j * n_, n_}; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[j * n_ + i]; }
    const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }
    void set_labels(std::optional<std::vector<std::string>> labels);

    friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

private:
    std::size_t n_;
    std::size_t p_;
    std::vector<double> values_;
    std::optional<std::vector<std::string>> labels_;
};

enum class CorrKind { KendallSine, Pearson, KendallRaw };

std::string to_string(CorrKind kind);

/// p x p correlation estimate. Diagonal is 1 for every kind.
class CorrMatrix {
public:
    CorrMatrix(linalg::SymMatrix entries, CorrKind kind);
    std::size_t dim() const noexcept { return entries_.dim(); }
    CorrKind kind() const noexcept { return kind_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_(i, j); }
    const linalg::SymMatrix& entries() const noexcept { return entries_; }

    friend bool operator==(const CorrMatrix&, const CorrMatrix&) = default;

private:
    linalg::SymMatrix entries_;
    CorrKind kind_;
};

/// Pairwise jackknife variance estimates of the tau U-statistic; diagonal is 0.
using JackknifeVarMatrix = linalg::SymMatrix;

/// Kendall's tau by direct O(n^2) enumeration, sign(0) = 0, denominator n(n-1)/2.
double kendall_tau_naive(std::span<const double> x, std::span<const double> y);

/// Same estimator in O(n log n): tie-aware merge sort inversion counting.
double kendall_tau_fast(std::span<const double> x, std::span<const double> y);

CorrMatrix kendall_matrix(const DataMatrix& data);

/// sin(pi/2 * tau) off the diagonal, exactly 1 on it.
CorrMatrix sine_transform(const CorrMatrix& tau);

/// Columns standardized (divisor n), then X^T X / n.
CorrMatrix pearson_matrix(const DataMatrix& data);

double jackknife_variance(const DataMatrix& data, std::size_t j, std::size_t k);

JackknifeVarMatrix jackknife_matrix(const DataMatrix& data);

/// Budget (bytes) for the cached per-column sign matrices used by jackknife_matrix.
inline constexpr std::size_t kSignCacheBudget = std::size_t{512} << 20;

}  // namespace tgrass
