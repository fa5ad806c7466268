#include "tgrass/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "tgrass/error.hpp"

namespace tgrass::linalg {

SymMatrix::SymMatrix(std::size_t dim, double fill) : dim_(dim), data_(dim * dim, fill) {
    if (dim == 0) throw InvalidInput("SymMatrix: dim must be >= 1");
}

SymMatrix SymMatrix::identity(std::size_t dim) {
    SymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    SymMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
}

SymMatrix SymMatrix::from_dense(std::size_t dim, std::span<const double> row_major, double tol) {
    if (row_major.size() != dim * dim) {
        throw InvalidInput("SymMatrix: expected " + std::to_string(dim * dim) + " values, got " +
                           std::to_string(row_major.size()));
    }
    SymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            const double a = row_major[i * dim + j];
            const double b = row_major[j * dim + i];
            if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) {
                throw InvalidInput("SymMatrix: entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") and mirror differ");
            }
            m.set(i, j, a == b ? a : 0.5 * (a + b));
        }
    }
    return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows, double tol) {
    const std::size_t dim = rows.size();
    std::vector<double> flat;
    flat.reserve(dim * dim);
    for (const auto& r : rows) {
        if (r.size() != dim) throw InvalidInput("SymMatrix: matrix is not square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return from_dense(dim, flat, tol);
}

bool SymMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double SymMatrix::max_abs_diff(const SymMatrix& other) const {
    if (other.dim_ != dim_) throw InvalidInput("SymMatrix: dimension mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    return worst;
}

void LowerTriangular::multiply(std::span<const double> z, std::span<double> out) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        const double* row = data_.data() + i * dim_;
        double acc = 0.0;
        for (std::size_t k = 0; k <= i; ++k) acc += row[k] * z[k];
        out[i] = acc;
    }
}

EigenExtremes eig_extremes(const SymMatrix& m) {
    if (!m.all_finite()) throw InvalidInput("eig_extremes: matrix has non-finite entries");
    const auto p = static_cast<Eigen::Index>(m.dim());
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(m.values().data(),
                                                                                                 p, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(view, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InvalidInput("eig_extremes: eigensolver did not converge");
    const auto& ev = solver.eigenvalues();  // ascending
    return {ev(0), ev(p - 1)};
}

LowerTriangular cholesky(const SymMatrix& m) {
    if (!m.all_finite()) throw InvalidInput("cholesky: matrix has non-finite entries");
    const std::size_t p = m.dim();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < p; ++i) max_diag = std::max(max_diag, m(i, i));
    const double pivot_floor = 1e-12 * max_diag;

    LowerTriangular l(p);
    for (std::size_t j = 0; j < p; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > pivot_floor) || max_diag <= 0.0) {
            throw SingularMatrix("cholesky: matrix is not positive definite (pivot " + std::to_string(j + 1) + ")");
        }
        const double ljj = std::sqrt(d);
        l.at(j, j) = ljj;
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l.at(i, j) = s / ljj;
        }
    }
    return l;
}

SymMatrix invert_pd(const SymMatrix& m) {
    const std::size_t p = m.dim();
    const LowerTriangular l = cholesky(m);

    // Linv = L^{-1} by forward substitution, column by column.
    std::vector<double> linv(p * p, 0.0);
    for (std::size_t c = 0; c < p; ++c) {
        linv[c * p + c] = 1.0 / l(c, c);
        for (std::size_t i = c + 1; i < p; ++i) {
            double s = 0.0;
            for (std::size_t k = c; k < i; ++k) s += l(i, k) * linv[k * p + c];
            linv[i * p + c] = -s / l(i, i);
        }
    }
    // m^{-1} = Linv^T Linv
    SymMatrix inv(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = j; k < p; ++k) s += linv[k * p + i] * linv[k * p + j];
            inv.set(i, j, s);
        }
    }
    return inv;
}

SymMatrix rescale_to_unit_diagonal(const SymMatrix& m) {
    const std::size_t p = m.dim();
    std::vector<double> inv_sqrt(p);
    for (std::size_t i = 0; i < p; ++i) {
        const double d = m(i, i);
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw InvalidInput("rescale_to_unit_diagonal: diagonal entry " + std::to_string(i + 1) + " is not positive");
        }
        inv_sqrt[i] = 1.0 / std::sqrt(d);
    }
    SymMatrix out(p);
    for (std::size_t i = 0; i < p; ++i) {
        out.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < p; ++j) out.set(i, j, m(i, j) * (inv_sqrt[i] * inv_sqrt[j]));
    }
    return out;
}

std::vector<double> multiply(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidInput("multiply: dimension mismatch");
    const std::size_t p = a.dim();
    std::vector<double> out(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t k = 0; k < p; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const auto brow = b.row(k);
            for (std::size_t j = 0; j < p; ++j) out[i * p + j] += aik * brow[j];
        }
    }
    return out;
}

double inverse_residual(const SymMatrix& a, const SymMatrix& b) {
    const std::size_t p = a.dim();
    const auto prod = multiply(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            worst = std::max(worst, std::abs(prod[i * p + j] - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

}  // namespace tgrass::linalg
