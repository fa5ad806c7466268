#include "tgrass/rankcorr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "tgrass/error.hpp"
#include "tgrass/parallel.hpp"

namespace tgrass {
namespace {

inline int sign_of(double d) noexcept { return (d > 0.0) - (d < 0.0); }

void check_pair(std::span<const double> x, std::span<const double> y, const char* who) {
    if (x.size() != y.size()) throw InvalidInput(std::string(who) + ": vectors differ in length");
    if (x.size() < 2) throw InvalidInput(std::string(who) + ": need n >= 2");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw InvalidInput(std::string(who) + ": non-finite value");
    }
}

std::int64_t pair_count(std::size_t n) {
    const auto m = static_cast<std::int64_t>(n);
    return m * (m - 1) / 2;
}

std::int64_t tied_pairs_in_runs(std::span<const double> sorted) {
    std::int64_t ties = 0;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
            ++run;
        } else {
            ties += static_cast<std::int64_t>(run) * static_cast<std::int64_t>(run - 1) / 2;
            run = 1;
        }
    }
    return ties;
}

// Sorts v ascending and returns the number of pairs i < k with v[i] > v[k].
std::int64_t sort_counting_inversions(std::vector<double>& v, std::vector<double>& scratch) {
    const std::size_t n = v.size();
    scratch.resize(n);
    std::int64_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo;
            std::size_t b = mid;
            std::size_t out = lo;
            while (a < mid && b < hi) {
                if (v[b] < v[a]) {
                    inversions += static_cast<std::int64_t>(mid - a);
                    scratch[out++] = v[b++];
                } else {
                    scratch[out++] = v[a++];
                }
            }
            while (a < mid) scratch[out++] = v[a++];
            while (b < hi) scratch[out++] = v[b++];
        }
        v.swap(scratch);
    }
    return inversions;
}

// Concordant minus discordant pair count, given the observation order sorted by x
// (ties in x in any order) and the x-tie pair count.
std::int64_t concordance_from_order(std::span<const double> x, std::span<const double> y,
                                    std::span<const std::size_t> order_by_x, std::int64_t x_ties) {
    const std::size_t n = x.size();
    thread_local std::vector<double> ys;
    thread_local std::vector<double> scratch;
    ys.resize(n);

    // Lay out y in (x, y) lexicographic order; count joint ties on the way.
    std::int64_t joint_ties = 0;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && x[order_by_x[end]] == x[order_by_x[start]]) ++end;
        for (std::size_t k = start; k < end; ++k) ys[k] = y[order_by_x[k]];
        if (end - start > 1) {
            std::sort(ys.begin() + static_cast<std::ptrdiff_t>(start), ys.begin() + static_cast<std::ptrdiff_t>(end));
            joint_ties += tied_pairs_in_runs(std::span<const double>(ys).subspan(start, end - start));
        }
        start = end;
    }

    const std::int64_t discordant = sort_counting_inversions(ys, scratch);
    const std::int64_t y_ties = tied_pairs_in_runs(ys);
    return pair_count(n) - x_ties - y_ties + joint_ties - 2 * discordant;
}

struct ColumnOrder {
    std::vector<std::size_t> order;
    std::int64_t ties = 0;
};

ColumnOrder order_column(std::span<const double> x) {
    ColumnOrder c;
    c.order.resize(x.size());
    std::iota(c.order.begin(), c.order.end(), std::size_t{0});
    std::stable_sort(c.order.begin(), c.order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> sorted(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) sorted[k] = x[c.order[k]];
    c.ties = tied_pairs_in_runs(sorted);
    return c;
}

double tau_from_concordance(std::int64_t s, std::size_t n) {
    return static_cast<double>(s) / static_cast<double>(pair_count(n));
}

// Leave-one-out concordance sums r_i = sum_{k != i} sign(dx) sign(dy). Integers.
void row_sums_direct(std::span<const double> x, std::span<const double> y, std::span<std::int32_t> out) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::int32_t acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc += sign_of(x[k] - x[i]) * sign_of(y[k] - y[i]);
        out[i] = acc;
    }
}

double omega_from_row_sums(std::span<const std::int32_t> rows) {
    const std::size_t n = rows.size();
    std::int64_t total = 0;
    for (auto r : rows) total += r;
    const double nd = static_cast<double>(n);
    const double tau = static_cast<double>(total) / (nd * (nd - 1.0));
    double acc = 0.0;
    for (auto r : rows) {
        const double dev = static_cast<double>(r) / (nd - 1.0) - tau;
        acc += dev * dev;
    }
    return 4.0 * (nd - 1.0) / ((nd - 2.0) * (nd - 2.0)) * acc;
}

void check_data_for_jackknife(const DataMatrix& data) {
    if (data.n() < 3) throw InvalidInput("jackknife: need n >= 3, got n=" + std::to_string(data.n()));
}

// Visits every unordered column pair (j < k), parallel over j.
template <class F>
void for_each_pair(std::size_t p, F&& body) {
    parallel_for(p, [&](std::size_t j) {
        for (std::size_t k = j + 1; k < p; ++k) body(j, k);
    });
}

}  // namespace

DataMatrix::DataMatrix(std::size_t n, std::size_t p, std::vector<double> column_major,
                       std::optional<std::vector<std::string>> labels)
    : n_(n), p_(p), values_(std::move(column_major)) {
    if (n < 2) throw InvalidInput("DataMatrix: need n >= 2, got n=" + std::to_string(n));
    if (p < 1) throw InvalidInput("DataMatrix: need p >= 1");
    if (values_.size() != n * p) throw InvalidInput("DataMatrix: value count does not match n*p");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw InvalidInput("DataMatrix: non-finite value at row " + std::to_string(k % n + 1) + ", column " +
                               std::to_string(k / n + 1));
        }
    }
    set_labels(std::move(labels));
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                 std::optional<std::vector<std::string>> labels) {
    const std::size_t n = rows.size();
    const std::size_t p = n ? rows.front().size() : 0;
    std::vector<double> values(n * p);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != p) throw InvalidInput("DataMatrix: ragged rows at row " + std::to_string(i + 1));
        for (std::size_t j = 0; j < p; ++j) values[j * n + i] = rows[i][j];
    }
    return DataMatrix(n, p, std::move(values), std::move(labels));
}

void DataMatrix::set_labels(std::optional<std::vector<std::string>> labels) {
    if (labels && labels->size() != p_) throw InvalidInput("DataMatrix: label count does not match p");
    labels_ = std::move(labels);
}

std::string to_string(CorrKind kind) {
    switch (kind) {
        case CorrKind::KendallSine: return "kendall-sine";
        case CorrKind::Pearson: return "pearson";
        case CorrKind::KendallRaw: return "kendall-raw";
    }
    return "unknown";
}

CorrMatrix::CorrMatrix(linalg::SymMatrix entries, CorrKind kind) : entries_(std::move(entries)), kind_(kind) {
    for (std::size_t i = 0; i < entries_.dim(); ++i) {
        if (entries_(i, i) != 1.0) throw InvalidInput("CorrMatrix: diagonal must be 1");
        for (std::size_t j = i + 1; j < entries_.dim(); ++j) {
            const double v = entries_(i, j);
            if (!(v >= -1.0 && v <= 1.0)) throw InvalidInput("CorrMatrix: entry outside [-1, 1]");
        }
    }
}

double kendall_tau_naive(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y, "kendall_tau_naive");
    const std::size_t n = x.size();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) s += sign_of(x[i] - x[k]) * sign_of(y[i] - y[k]);
    }
    return tau_from_concordance(s, n);
}

double kendall_tau_fast(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y, "kendall_tau_fast");
    const ColumnOrder ox = order_column(x);
    return tau_from_concordance(concordance_from_order(x, y, ox.order, ox.ties), x.size());
}

CorrMatrix kendall_matrix(const DataMatrix& data) {
    const std::size_t p = data.p();
    std::vector<ColumnOrder> orders(p);
    parallel_for(p, [&](std::size_t j) { orders[j] = order_column(data.column(j)); });

    linalg::SymMatrix tau = linalg::SymMatrix::identity(p);
    for_each_pair(p, [&](std::size_t j, std::size_t k) {
        const auto s = concordance_from_order(data.column(j), data.column(k), orders[j].order, orders[j].ties);
        tau.set(j, k, tau_from_concordance(s, data.n()));
    });
    return CorrMatrix(std::move(tau), CorrKind::KendallRaw);
}

CorrMatrix sine_transform(const CorrMatrix& tau) {
    if (tau.kind() != CorrKind::KendallRaw) throw InvalidInput("sine_transform: input must be a kendall-raw matrix");
    const std::size_t p = tau.dim();
    linalg::SymMatrix out = linalg::SymMatrix::identity(p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j + 1; k < p; ++k) out.set(j, k, std::sin(0.5 * std::numbers::pi * tau(j, k)));
    }
    return CorrMatrix(std::move(out), CorrKind::KendallSine);
}

CorrMatrix pearson_matrix(const DataMatrix& data) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    const double nd = static_cast<double>(n);
    std::vector<double> z(n * p);
    for (std::size_t j = 0; j < p; ++j) {
        const auto col = data.column(j);
        if (std::all_of(col.begin(), col.end(), [&](double v) { return v == col[0]; })) {
            throw DegenerateColumn("pearson_matrix: column " + std::to_string(j + 1) + " is constant", j);
        }
        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= nd;
        double ss = 0.0;
        for (double v : col) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / nd);
        if (!(sd > 0.0)) throw DegenerateColumn("pearson_matrix: column " + std::to_string(j + 1) + " is constant", j);
        for (std::size_t i = 0; i < n; ++i) z[j * n + i] = (col[i] - mean) / sd;
    }
    linalg::SymMatrix out = linalg::SymMatrix::identity(p);
    for_each_pair(p, [&](std::size_t j, std::size_t k) {
        const double* a = z.data() + j * n;
        const double* b = z.data() + k * n;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
        out.set(j, k, std::clamp(acc / nd, -1.0, 1.0));
    });
    return CorrMatrix(std::move(out), CorrKind::Pearson);
}

double jackknife_variance(const DataMatrix& data, std::size_t j, std::size_t k) {
    check_data_for_jackknife(data);
    if (j >= data.p() || k >= data.p()) throw InvalidInput("jackknife_variance: column index out of range");
    if (j == k) throw InvalidInput("jackknife_variance: need two distinct columns");
    std::vector<std::int32_t> rows(data.n());
    row_sums_direct(data.column(j), data.column(k), rows);
    return omega_from_row_sums(rows);
}

JackknifeVarMatrix jackknife_matrix(const DataMatrix& data) {
    check_data_for_jackknife(data);
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    JackknifeVarMatrix out(p, 0.0);

    if (p * n * n <= kSignCacheBudget) {
        // signs[j][i*n + k] = sign(x_kj - x_ij)
        std::vector<std::vector<std::int8_t>> signs(p);
        parallel_for(p, [&](std::size_t j) {
            const auto x = data.column(j);
            auto& s = signs[j];
            s.resize(n * n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) s[i * n + k] = static_cast<std::int8_t>(sign_of(x[k] - x[i]));
            }
        });
        for_each_pair(p, [&](std::size_t j, std::size_t k) {
            thread_local std::vector<std::int32_t> rows;
            rows.resize(n);
            const std::int8_t* a = signs[j].data();
            const std::int8_t* b = signs[k].data();
            for (std::size_t i = 0; i < n; ++i) {
                std::int32_t acc = 0;
                const std::int8_t* ar = a + i * n;
                const std::int8_t* br = b + i * n;
                for (std::size_t m = 0; m < n; ++m) acc += static_cast<std::int32_t>(ar[m] * br[m]);
                rows[i] = acc;
            }
            out.set(j, k, omega_from_row_sums(rows));
        });
    } else {
        for_each_pair(p, [&](std::size_t j, std::size_t k) {
            thread_local std::vector<std::int32_t> rows;
            rows.resize(n);
            row_sums_direct(data.column(j), data.column(k), rows);
            out.set(j, k, omega_from_row_sums(rows));
        });
    }
    return out;
}

}  // namespace tgrass
