#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tgrass/linalg.hpp"
#include "tgrass/rankcorr.hpp"
#include "tgrass/rng.hpp"
#include "tgrass/screening.hpp"

namespace tgrass::sim {

enum class Scenario { A, B, C, D };
enum class BaseDistribution { Gaussian, StudentT };
enum class Transform { None, Nonparanormal };

/// The four strictly increasing marginal transforms.
enum class MonotoneTransform { Exp, Cube, Fifth, ShiftedCube };

std::string to_string(Scenario s);
std::string to_string(BaseDistribution b);
std::string to_string(Transform t);
Scenario parse_scenario(const std::string& s);
BaseDistribution parse_base(const std::string& s);
Transform parse_transform(const std::string& s);

double apply(MonotoneTransform t, double x) noexcept;

struct SimConfig {
    Scenario scenario = Scenario::C;
    std::size_t n = 100;
    std::size_t p = 50;
    BaseDistribution base = BaseDistribution::Gaussian;
    /// Degrees of freedom, used when base is StudentT.
    double theta = 5.0;
    Transform transform = Transform::None;
    std::uint64_t seed = 0;

    /// Throws InvalidInput on divisibility, dimension, or df violations.
    void validate() const;
    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct GroundTruth {
    linalg::SymMatrix sigma;  ///< unit-diagonal correlation
    linalg::SymMatrix omega;  ///< sigma^{-1}
    EdgeSet edges;            ///< support of omega above 1e-12
    Scenario scenario;
};

inline constexpr double kEdgeSupportTol = 1e-12;
inline constexpr double kSimAEdgeProbability = 0.01;

/// A + (target - lambda_min(A)) I, so the result has smallest eigenvalue `target`.
linalg::SymMatrix shift_min_eigenvalue(const linalg::SymMatrix& a, double target = 0.1);

/// Rescales inverse(precision) to unit diagonal and carries the precision along
/// so that sigma * omega = I still holds.
GroundTruth ground_truth_from_precision(const linalg::SymMatrix& precision, Scenario scenario);

GroundTruth gen_precision_A(std::size_t p, RngStream& rng, double edge_probability = kSimAEdgeProbability);
GroundTruth gen_precision_B(std::size_t p, RngStream& rng);
GroundTruth gen_correlation_C(std::size_t p);
GroundTruth gen_precision_D(std::size_t p);

/// Draws (A, B) or builds (C, D) the ground truth for cfg.scenario at cfg.p.
GroundTruth generate_ground_truth(const SimConfig& cfg, RngStream& rng);

struct Sample {
    DataMatrix observed;
    DataMatrix latent;
    /// One per column; empty when no transform was applied.
    std::vector<MonotoneTransform> transforms;
};

/// Latent rows first (row by row), then one transform per column.
Sample sample_detailed(const GroundTruth& gt, const SimConfig& cfg, RngStream& rng);
DataMatrix sample(const GroundTruth& gt, const SimConfig& cfg, RngStream& rng);

}  // namespace tgrass::sim
