#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgrass/rankcorr.hpp"
#include "tgrass/screening.hpp"
#include "tgrass/simgen.hpp"

namespace tgrass::bench {

struct ConfusionMetrics {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
    double fpr = 0.0;  ///< fp / (fp + tn), 0 when the truth is complete
    double fnr = 0.0;  ///< fn / (tp + fn), 0 when the truth is empty
    std::size_t edge_count = 0;

    double tpr() const noexcept { return 1.0 - fnr; }
    friend bool operator==(const ConfusionMetrics&, const ConfusionMetrics&) = default;
};

ConfusionMetrics confusion(const EdgeSet& estimate, const EdgeSet& truth);

enum class Estimator { TransellipticalGrass, PearsonGrass };

std::string to_string(Estimator e);
Estimator parse_estimator(const std::string& s);

/// Builds the estimator's correlation matrix (kendall-sine or pearson).
CorrMatrix estimate_correlation(const DataMatrix& data, Estimator e);

struct ExperimentSpec {
    sim::SimConfig sim;
    ThresholdSpec threshold = ThresholdSpec::fixed(0.0);
    Estimator estimator = Estimator::TransellipticalGrass;
    std::size_t replicates = 1;
    /// Replicate r draws from RngStream(base_seed ^ r); sim.seed is not used here.
    std::uint64_t base_seed = 0;

    void validate() const;
};

/// Arithmetic means over replicates.
struct MetricMeans {
    double tp = 0.0;
    double fp = 0.0;
    double tn = 0.0;
    double fn = 0.0;
    double fpr = 0.0;
    double fnr = 0.0;
    double edge_count = 0.0;
};

MetricMeans mean_of(std::span<const ConfusionMetrics> metrics);

struct ExperimentResult {
    std::vector<ConfusionMetrics> per_replicate;
    MetricMeans mean;
    /// FPR mode: the f used in each replicate (q is converted with the true |E^c|).
    std::vector<std::optional<double>> f_used;
};

/// Simulate, estimate, threshold, screen, and score each replicate.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Several thresholds against the same replicate data; entry t equals
/// run_experiment with spec.threshold = thresholds[t].
std::vector<ExperimentResult> run_table(const ExperimentSpec& spec, const std::vector<ThresholdSpec>& thresholds);

struct SweepResult {
    std::vector<double> grid;
    std::vector<double> mean_tpr;
    std::vector<double> mean_fpr;
    /// [replicate][grid index]
    std::vector<std::vector<double>> replicate_tpr;
    std::vector<std::vector<double>> replicate_fpr;
};

/// Evenly spaced values over [lo, hi], endpoints included.
std::vector<double> linear_grid(std::size_t count, double lo = 0.0, double hi = 1.0);

/// spec.threshold is ignored; each grid value is applied as a fixed threshold.
SweepResult roc_sweep(const ExperimentSpec& spec, const std::vector<double>& grid);

/// Trapezoidal area under (fpr, tpr) after sorting by fpr and anchoring (0,0), (1,1).
double auc(std::span<const double> fpr, std::span<const double> tpr);
double auc(const SweepResult& sweep);

}  // namespace tgrass::bench
