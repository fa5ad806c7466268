#include "tgrass/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tgrass/error.hpp"
#include "tgrass/parallel.hpp"
#include "tgrass/rankcorr.hpp"

namespace tgrass::diag {
namespace {

struct Spectrum {
    double lambda_min;
    double lambda_max;
    double beta;
    double nu;
};

Spectrum spectrum_of(const linalg::SymMatrix& sigma) {
    const auto ext = linalg::eig_extremes(sigma);
    return {ext.lambda_min, ext.lambda_max, ext.lambda_max / ext.lambda_min,
            2.0 / (1.0 / ext.lambda_max + 1.0 / ext.lambda_min)};
}

std::optional<double> min_scaled_precision(const sim::GroundTruth& gt, double nu) {
    std::optional<double> best;
    for (const auto& e : gt.edges.edges()) {
        const double v = nu * nu * std::abs(gt.omega(e.first, e.second));
        best = best ? std::min(*best, v) : v;
    }
    return best;
}

// One bivariate Gaussian draw of n observations with correlation rho.
DataMatrix gaussian_pair(std::size_t n, double rho, RngStream& rng) {
    std::vector<double> v(2 * n);
    const double c = std::sqrt(1.0 - rho * rho);
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = rng.standard_normal();
        const double z2 = rng.standard_normal();
        v[i] = z1;
        v[n + i] = rho * z1 + c * z2;
    }
    return DataMatrix(n, 2, std::move(v));
}

void check_pair_params(std::size_t n, double rho, std::size_t replicates, std::size_t min_n, std::size_t min_reps,
                       const char* who) {
    if (n < min_n) throw InvalidInput(std::string(who) + ": n must be >= " + std::to_string(min_n));
    if (!(std::abs(rho) < 1.0)) throw InvalidInput(std::string(who) + ": need |rho| < 1");
    if (replicates < min_reps) {
        throw InvalidInput(std::string(who) + ": replicates must be >= " + std::to_string(min_reps));
    }
}

}  // namespace

void AssumptionParams::validate() const {
    if (n < 1) throw InvalidInput("assumptions: n must be >= 1");
    if (!(c1 > 0.0)) throw InvalidInput("assumptions: C1 must be > 0");
    if (!(kappa > 0.0 && kappa < 0.5)) throw InvalidInput("assumptions: kappa must lie in (0, 1/2)");
    if (!(xi > 0.0 && xi < 1.0 - 2.0 * kappa)) throw InvalidInput("assumptions: xi must lie in (0, 1 - 2 kappa)");
    if (!(c2 > 0.0)) throw InvalidInput("assumptions: C2 must be > 0");
    if (!(alpha >= 0.0)) throw InvalidInput("assumptions: alpha must be >= 0");
    if (!(small_ratio > 0.0)) throw InvalidInput("assumptions: small ratio must be > 0");
}

AssumptionReport check_assumptions(const sim::GroundTruth& gt, const AssumptionParams& params) {
    params.validate();
    AssumptionReport r;
    r.params = params;
    const double nd = static_cast<double>(params.n);
    const std::size_t p = gt.sigma.dim();

    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j + 1; k < p; ++k) {
            const double a = std::abs(gt.sigma(j, k));
            if (gt.edges.contains(j, k)) {
                r.min_edge_corr = r.min_edge_corr ? std::min(*r.min_edge_corr, a) : a;
            } else {
                r.max_nonedge_corr = std::max(r.max_nonedge_corr, a);
            }
        }
    }
    const Spectrum s = spectrum_of(gt.sigma);
    r.lambda_min = s.lambda_min;
    r.lambda_max = s.lambda_max;
    r.beta = s.beta;
    r.nu = s.nu;
    r.min_scaled_precision = min_scaled_precision(gt, s.nu);

    r.min_corr_bound = params.c1 * std::pow(nd, -params.kappa);
    r.min_corr_holds = !r.min_edge_corr || *r.min_edge_corr >= r.min_corr_bound;
    r.eigen_bound = params.c2 * std::pow(nd, params.alpha);
    r.eigen_holds = r.lambda_max <= r.eigen_bound;
    r.nonedge_surrogate = r.max_nonedge_corr * std::pow(nd, 0.5 * (1.0 - params.xi));
    r.nonedge_small = r.nonedge_surrogate < params.small_ratio;
    return r;
}

Proposition1Report check_proposition1(const sim::GroundTruth& gt, std::size_t n, double c1, double kappa, double xi) {
    if (n < 1) throw InvalidInput("proposition1: n must be >= 1");
    if (!(c1 > 0.0)) throw InvalidInput("proposition1: C1 must be > 0");
    if (!(kappa > 0.0 && kappa < 0.5)) throw InvalidInput("proposition1: kappa must lie in (0, 1/2)");
    if (!(xi > 0.0)) throw InvalidInput("proposition1: xi must be > 0");
    if (!(1.0 - xi - kappa > 0.0)) throw InvalidInput("proposition1: need 1 - xi - kappa > 0");

    Proposition1Report r;
    const double nd = static_cast<double>(n);
    const Spectrum s = spectrum_of(gt.sigma);
    r.beta = s.beta;
    r.lambda_max = s.lambda_max;
    r.nu = s.nu;

    const double na = std::pow(nd, 0.5 * (1.0 - xi));
    const double inv_root = 1.0 / std::sqrt(s.lambda_max);
    r.beta_bound = (na - inv_root > 0.0) ? (na + inv_root) / (na - inv_root) : std::numeric_limits<double>::infinity();
    r.beta_above_one = r.beta > 1.0;
    r.beta_within_bound = r.beta <= r.beta_bound;
    r.beta_condition = r.beta_above_one && r.beta_within_bound;
    if (!r.beta_above_one) r.notes.push_back("beta = 1: the strict requirement 1 < beta fails (degenerate spectrum)");

    r.min_scaled_precision = min_scaled_precision(gt, s.nu);
    r.scaled_precision_bound = 2.0 * c1 * std::pow(nd, -kappa);
    r.converse_bound = 0.5 * c1 * std::pow(nd, -kappa);
    r.scaled_precision_condition = !r.min_scaled_precision || *r.min_scaled_precision >= r.scaled_precision_bound;
    if (!r.min_scaled_precision) r.notes.push_back("no true edges: precision condition is vacuous");

    r.sample_size_bound = std::pow(2.0 / c1, 1.0 / (1.0 - xi - kappa));
    r.sample_size_condition = nd >= r.sample_size_bound;

    r.implies_min_corr = r.beta_condition && r.scaled_precision_condition && r.sample_size_condition;
    return r;
}

double neighborhood_size_bound(double lambda_max, std::size_t n, double c1, double kappa) {
    if (!(c1 > 0.0)) throw InvalidInput("neighborhood_size_bound: C1 must be > 0");
    if (!(kappa >= 0.0)) throw InvalidInput("neighborhood_size_bound: kappa must be >= 0");
    return 9.0 / (c1 * c1) * std::pow(static_cast<double>(n), 2.0 * kappa) * lambda_max;
}

double neighborhood_size_bound(const sim::GroundTruth& gt, std::size_t n, double c1, double kappa) {
    return neighborhood_size_bound(linalg::eig_extremes(gt.sigma).lambda_max, n, c1, kappa);
}

double hoeffding_bound(std::size_t n, double t) {
    if (n < 2) throw InvalidInput("hoeffding_bound: n must be >= 2");
    if (!(t > 0.0)) throw InvalidInput("hoeffding_bound: t must be > 0");
    const double half = static_cast<double>(n / 2);
    return std::min(1.0, 2.0 * std::exp(-half * t * t / 2.0));
}

double tau_from_rho(double rho) { return 2.0 / std::numbers::pi * std::asin(rho); }

std::vector<double> tau_exceedance(std::size_t n, double rho, const std::vector<double>& ts, std::size_t replicates,
                                   RngStream& rng) {
    check_pair_params(n, rho, replicates, 2, 1, "tau_exceedance");
    const double tau = tau_from_rho(rho);
    const std::uint64_t base = rng.next_u64();
    std::vector<double> deviation(replicates);
    parallel_for(replicates, [&](std::size_t r) {
        RngStream local = RngStream::for_replicate(base, r);
        const DataMatrix d = gaussian_pair(n, rho, local);
        deviation[r] = std::abs(kendall_tau_fast(d.column(0), d.column(1)) - tau);
    });
    std::vector<double> freq;
    for (double t : ts) {
        const auto hits = std::count_if(deviation.begin(), deviation.end(), [&](double d) { return d > t; });
        freq.push_back(static_cast<double>(hits) / static_cast<double>(replicates));
    }
    return freq;
}

NormalityResult normality_check(std::size_t n, double rho, std::size_t replicates, RngStream& rng) {
    check_pair_params(n, rho, replicates, 10, 100, "normality_check");
    const double tau = tau_from_rho(rho);
    const double root_n = std::sqrt(static_cast<double>(n));
    const std::uint64_t base = rng.next_u64();
    std::vector<double> stat(replicates);
    parallel_for(replicates, [&](std::size_t r) {
        RngStream local = RngStream::for_replicate(base, r);
        const DataMatrix d = gaussian_pair(n, rho, local);
        const double tau_hat = kendall_tau_fast(d.column(0), d.column(1));
        const double omega = std::sqrt(jackknife_variance(d, 0, 1));
        stat[r] = root_n * (tau_hat - tau) / omega;
    });
    double mean = 0.0;
    for (double s : stat) mean += s;
    mean /= static_cast<double>(replicates);
    double ss = 0.0;
    for (double s : stat) ss += (s - mean) * (s - mean);
    return {mean, ss / static_cast<double>(replicates - 1)};
}

}  // namespace tgrass::diag
