#include "tgrass/simgen.hpp"

#include <cmath>

#include "tgrass/error.hpp"

namespace tgrass::sim {
namespace {

double edge_weight(RngStream& rng) { return rng.uniform(-0.3, 0.7); }

EdgeSet support_of(const linalg::SymMatrix& omega) {
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < omega.dim(); ++j) {
        for (std::size_t k = j + 1; k < omega.dim(); ++k) {
            if (std::abs(omega(j, k)) > kEdgeSupportTol) edges.push_back({j, k});
        }
    }
    return EdgeSet(omega.dim(), std::move(edges));
}

void require_divisible_by_ten(std::size_t p, const char* who) {
    if (p == 0 || p % 10 != 0) {
        throw InvalidInput(std::string(who) + ": p must be a positive multiple of 10, got p=" + std::to_string(p));
    }
}

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::A: return "A";
        case Scenario::B: return "B";
        case Scenario::C: return "C";
        case Scenario::D: return "D";
    }
    return "?";
}

std::string to_string(BaseDistribution b) { return b == BaseDistribution::Gaussian ? "gaussian" : "student-t"; }

std::string to_string(Transform t) { return t == Transform::None ? "none" : "nonparanormal"; }

Scenario parse_scenario(const std::string& s) {
    if (s == "A" || s == "a") return Scenario::A;
    if (s == "B" || s == "b") return Scenario::B;
    if (s == "C" || s == "c") return Scenario::C;
    if (s == "D" || s == "d") return Scenario::D;
    throw InvalidInput("unknown scenario '" + s + "' (expected A, B, C, or D)");
}

BaseDistribution parse_base(const std::string& s) {
    if (s == "gaussian") return BaseDistribution::Gaussian;
    if (s == "t" || s == "student-t") return BaseDistribution::StudentT;
    throw InvalidInput("unknown base distribution '" + s + "' (expected gaussian or t)");
}

Transform parse_transform(const std::string& s) {
    if (s == "none") return Transform::None;
    if (s == "npn" || s == "nonparanormal") return Transform::Nonparanormal;
    throw InvalidInput("unknown transform '" + s + "' (expected none or npn)");
}

double apply(MonotoneTransform t, double x) noexcept {
    // Products rather than pow(): rounded multiplication is monotone.
    switch (t) {
        case MonotoneTransform::Exp: return std::exp(x);
        case MonotoneTransform::Cube: return x * x * x;
        case MonotoneTransform::Fifth: {
            const double x2 = x * x;
            return x2 * x2 * x;
        }
        case MonotoneTransform::ShiftedCube: {
            const double y = x - 1.0;
            return y * y * y;
        }
    }
    return x;
}

void SimConfig::validate() const {
    if (n < 2) throw InvalidInput("SimConfig: n must be >= 2");
    if (p < 2) throw InvalidInput("SimConfig: p must be >= 2");
    if ((scenario == Scenario::B || scenario == Scenario::D) && p % 10 != 0) {
        throw InvalidInput("SimConfig: scenario " + to_string(scenario) + " needs p divisible by 10, got p=" +
                           std::to_string(p));
    }
    if (base == BaseDistribution::StudentT && !(theta > 2.0 && std::isfinite(theta))) {
        throw InvalidInput("SimConfig: student-t degrees of freedom must be > 2");
    }
}

linalg::SymMatrix shift_min_eigenvalue(const linalg::SymMatrix& a, double target) {
    const auto ext = linalg::eig_extremes(a);
    linalg::SymMatrix out = a;
    const double shift = target - ext.lambda_min;
    for (std::size_t i = 0; i < a.dim(); ++i) out.set(i, i, a(i, i) + shift);
    return out;
}

GroundTruth ground_truth_from_precision(const linalg::SymMatrix& precision, Scenario scenario) {
    const linalg::SymMatrix raw_sigma = linalg::invert_pd(precision);
    const std::size_t p = precision.dim();
    std::vector<double> root(p);
    for (std::size_t i = 0; i < p; ++i) root[i] = std::sqrt(raw_sigma(i, i));
    // sigma = D^{-1/2} S D^{-1/2}  =>  sigma^{-1} = D^{1/2} S^{-1} D^{1/2}
    linalg::SymMatrix omega(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) omega.set(i, j, precision(i, j) * (root[i] * root[j]));
    }
    linalg::SymMatrix sigma = linalg::rescale_to_unit_diagonal(raw_sigma);
    EdgeSet edges = support_of(omega);
    return GroundTruth{std::move(sigma), std::move(omega), std::move(edges), scenario};
}

GroundTruth gen_precision_A(std::size_t p, RngStream& rng, double edge_probability) {
    if (p < 2) throw InvalidInput("gen_precision_A: p must be >= 2");
    linalg::SymMatrix a = linalg::SymMatrix::identity(p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j + 1; k < p; ++k) {
            if (rng.uniform01() < edge_probability) a.set(j, k, edge_weight(rng));
        }
    }
    return ground_truth_from_precision(shift_min_eigenvalue(a), Scenario::A);
}

GroundTruth gen_precision_B(std::size_t p, RngStream& rng) {
    require_divisible_by_ten(p, "gen_precision_B");
    const std::size_t block = p / 10;
    linalg::SymMatrix a = linalg::SymMatrix::identity(p);
    for (std::size_t start = 0; start < p; start += block) {
        for (std::size_t j = start; j < start + block; ++j) {
            for (std::size_t k = j + 1; k < start + block; ++k) a.set(j, k, edge_weight(rng));
        }
    }
    return ground_truth_from_precision(shift_min_eigenvalue(a), Scenario::B);
}

GroundTruth gen_correlation_C(std::size_t p) {
    if (p < 2) throw InvalidInput("gen_correlation_C: p must be >= 2");
    constexpr double r = 0.3;
    linalg::SymMatrix sigma(p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j; k < p; ++k) sigma.set(j, k, std::pow(r, static_cast<double>(k - j)));
    }
    // AR(1) precision is tridiagonal: [1, 1+r^2, ..., 1+r^2, 1] on the diagonal,
    // -r beside it, all scaled by 1/(1-r^2).
    const double scale = 1.0 / (1.0 - r * r);
    linalg::SymMatrix omega(p);
    for (std::size_t j = 0; j < p; ++j) {
        const bool end = (j == 0 || j == p - 1);
        omega.set(j, j, (end ? 1.0 : 1.0 + r * r) * scale);
        if (j + 1 < p) omega.set(j, j + 1, -r * scale);
    }
    EdgeSet edges = support_of(omega);
    return GroundTruth{std::move(sigma), std::move(omega), std::move(edges), Scenario::C};
}

GroundTruth gen_precision_D(std::size_t p) {
    require_divisible_by_ten(p, "gen_precision_D");
    linalg::SymMatrix precision(p);
    for (std::size_t start = 0; start < p; start += 10) {
        for (std::size_t j = start; j < start + 10; ++j) {
            for (std::size_t k = j; k < start + 10; ++k) precision.set(j, k, std::pow(0.9, static_cast<double>(k - j)));
        }
    }
    return ground_truth_from_precision(precision, Scenario::D);
}

GroundTruth generate_ground_truth(const SimConfig& cfg, RngStream& rng) {
    switch (cfg.scenario) {
        case Scenario::A: return gen_precision_A(cfg.p, rng);
        case Scenario::B: return gen_precision_B(cfg.p, rng);
        case Scenario::C: return gen_correlation_C(cfg.p);
        case Scenario::D: return gen_precision_D(cfg.p);
    }
    throw InvalidInput("generate_ground_truth: unknown scenario");
}

Sample sample_detailed(const GroundTruth& gt, const SimConfig& cfg, RngStream& rng) {
    cfg.validate();
    const std::size_t p = gt.sigma.dim();
    if (cfg.p != p) {
        throw InvalidInput("sample: config p=" + std::to_string(cfg.p) + " but ground truth has p=" +
                           std::to_string(p));
    }
    const std::size_t n = cfg.n;
    const linalg::LowerTriangular chol = linalg::cholesky(gt.sigma);
    const bool heavy = cfg.base == BaseDistribution::StudentT;

    std::vector<double> latent(n * p);
    std::vector<double> z(p);
    std::vector<double> x(p);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : z) v = rng.standard_normal();
        chol.multiply(z, x);
        if (heavy) {
            // sqrt(theta / w) * sqrt((theta - 2) / theta): correlation, not scatter, equals sigma.
            const double w = rng.chi_square(cfg.theta);
            const double scale = std::sqrt((cfg.theta - 2.0) / w);
            for (auto& v : x) v *= scale;
        }
        for (std::size_t j = 0; j < p; ++j) latent[j * n + i] = x[j];
    }

    Sample out{DataMatrix(n, p, latent), DataMatrix(n, p, latent), {}};
    if (cfg.transform == Transform::Nonparanormal) {
        out.transforms.resize(p);
        for (std::size_t j = 0; j < p; ++j) {
            const auto t = static_cast<MonotoneTransform>(rng.uniform_index(4));
            out.transforms[j] = t;
            for (double& v : out.observed.column(j)) v = apply(t, v);
        }
        // Re-validate: transforms must keep values finite.
        out.observed = DataMatrix(n, p, std::vector<double>(out.observed.column(0).data(),
                                                           out.observed.column(0).data() + n * p));
    }
    return out;
}

DataMatrix sample(const GroundTruth& gt, const SimConfig& cfg, RngStream& rng) {
    return std::move(sample_detailed(gt, cfg, rng).observed);
}

}  // namespace tgrass::sim
