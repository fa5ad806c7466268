#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tgrass/rng.hpp"
#include "tgrass/simgen.hpp"

namespace tgrass::diag {

/// Constants of the screening assumptions. Defaults are desk-scale choices.
struct AssumptionParams {
    std::size_t n = 100;
    double c1 = 0.6;
    double kappa = 0.25;
    double xi = 0.3;
    double c2 = 1.0;
    double alpha = 0.5;
    /// Cutoff below which the finite-n surrogate max|rho_nonedge| n^((1-xi)/2)
    /// is called "small". Heuristic.
    double small_ratio = 0.1;

    void validate() const;
};

struct AssumptionReport {
    AssumptionParams params;

    /// min over true edges of |rho|; empty when there are no edges.
    std::optional<double> min_edge_corr;
    /// max over true non-edges of |rho|; 0 when there are none.
    double max_nonedge_corr = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double beta = 1.0;
    double nu = 1.0;
    /// min over true edges of nu^2 |omega|; empty when there are no edges.
    std::optional<double> min_scaled_precision;

    double min_corr_bound = 0.0;  ///< C1 n^-kappa
    bool min_corr_holds = false;
    double eigen_bound = 0.0;     ///< C2 n^alpha
    bool eigen_holds = false;
    double nonedge_surrogate = 0.0;  ///< max_nonedge_corr * n^((1-xi)/2)
    bool nonedge_small = false;
};

AssumptionReport check_assumptions(const sim::GroundTruth& gt, const AssumptionParams& params);

struct Proposition1Report {
    double beta = 1.0;
    double lambda_max = 1.0;
    double nu = 1.0;
    /// {n^a + lmax^{-1/2}} / {n^a - lmax^{-1/2}}, a = (1-xi)/2; +inf when the
    /// denominator is not positive.
    double beta_bound = 0.0;
    bool beta_above_one = false;
    bool beta_within_bound = false;
    bool beta_condition = false;

    std::optional<double> min_scaled_precision;
    double scaled_precision_bound = 0.0;  ///< 2 C1 n^-kappa
    bool scaled_precision_condition = false;
    double converse_bound = 0.0;  ///< C1 n^-kappa / 2

    double sample_size_bound = 0.0;  ///< (2/C1)^(1/(1-xi-kappa))
    bool sample_size_condition = false;

    /// All three conditions together, under which the minimum-correlation
    /// assumption follows.
    bool implies_min_corr = false;
    std::vector<std::string> notes;
};

Proposition1Report check_proposition1(const sim::GroundTruth& gt, std::size_t n, double c1, double kappa, double xi);

/// 9 C1^-2 n^(2 kappa) lambda_max(Sigma): explicit cap on screened neighborhood size.
double neighborhood_size_bound(const sim::GroundTruth& gt, std::size_t n, double c1, double kappa);
double neighborhood_size_bound(double lambda_max, std::size_t n, double c1, double kappa);

/// min(1, 2 exp(-floor(n/2) t^2 / 2)): Hoeffding bound for the order-2 tau U-statistic.
double hoeffding_bound(std::size_t n, double t);

/// Greiner's relation tau = (2/pi) asin(rho) for elliptical pairs.
double tau_from_rho(double rho);

/// Empirical P(|tau_hat - tau| > t) for bivariate Gaussian pairs, one entry per t.
std::vector<double> tau_exceedance(std::size_t n, double rho, const std::vector<double>& ts, std::size_t replicates,
                                   RngStream& rng);

struct NormalityResult {
    double mean;
    double variance;
};

/// Mean and variance (divisor replicates - 1) of sqrt(n)(tau_hat - tau)/omega_hat
/// over simulated bivariate Gaussian pairs.
NormalityResult normality_check(std::size_t n, double rho, std::size_t replicates, RngStream& rng);

}  // namespace tgrass::diag
