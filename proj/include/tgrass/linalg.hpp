#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tgrass::linalg {

/// Dense symmetric p x p matrix, row-major. Every mutation goes through set(),
/// which writes both (i, j) and (j, i), so the storage is always exactly symmetric.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t dim, double fill = 0.0);

    static SymMatrix identity(std::size_t dim);
    static SymMatrix diagonal(std::span<const double> diag);

    /// Builds from row-major values. Rejects entries whose mirror differs by more
    /// than tol * max(1, |a_ij|); accepted pairs are averaged.
    static SymMatrix from_dense(std::size_t dim, std::span<const double> row_major, double tol = 0.0);
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows, double tol = 0.0);

    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
    void set(std::size_t i, std::size_t j, double v) noexcept {
        data_[i * dim_ + j] = v;
        data_[j * dim_ + i] = v;
    }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * dim_, dim_}; }
    std::span<const double> values() const noexcept { return data_; }

    bool all_finite() const noexcept;
    double max_abs_diff(const SymMatrix& other) const;

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    std::size_t dim_;
    std::vector<double> data_;
};

/// Lower-triangular factor, row-major with zero upper triangle.
class LowerTriangular {
public:
    explicit LowerTriangular(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}
    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
    double& at(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }

    /// out = L * z
    void multiply(std::span<const double> z, std::span<double> out) const;

private:
    std::size_t dim_;
    std::vector<double> data_;
};

struct EigenExtremes {
    double lambda_min;
    double lambda_max;
};

/// Smallest and largest eigenvalue from a full symmetric eigendecomposition.
EigenExtremes eig_extremes(const SymMatrix& m);

/// Cholesky factor. A pivot <= 1e-12 * max diagonal counts as not positive definite.
LowerTriangular cholesky(const SymMatrix& m);

SymMatrix invert_pd(const SymMatrix& m);

/// D^{-1/2} m D^{-1/2}, D = diag(m). The diagonal of the result is exactly 1.
SymMatrix rescale_to_unit_diagonal(const SymMatrix& m);

/// General product a * b (result symmetrized only if callers know it is symmetric).
std::vector<double> multiply(const SymMatrix& a, const SymMatrix& b);

/// max |a*b - I|
double inverse_residual(const SymMatrix& a, const SymMatrix& b);

}  // namespace tgrass::linalg
