#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tgrass/linalg.hpp"
#include "tgrass/rankcorr.hpp"

namespace tgrass {

/// Undirected edge, 0-based, first < second.
struct Edge {
    std::size_t first;
    std::size_t second;
    auto operator<=>(const Edge&) const = default;
};

/// Sorted duplicate-free edge list on p nodes.
class EdgeSet {
public:
    explicit EdgeSet(std::size_t p) : p_(p) {}
    /// Validates, sorts, and rejects duplicates.
    EdgeSet(std::size_t p, std::vector<Edge> edges);

    std::size_t p() const noexcept { return p_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return edges_.size(); }
    bool contains(std::size_t a, std::size_t b) const;

    friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

private:
    std::size_t p_;
    std::vector<Edge> edges_;
};

/// True iff every edge of sub is in super.
bool is_subset(const EdgeSet& sub, const EdgeSet& super);

struct FixedThreshold {
    double gamma;
};

/// gamma = (2/3) C1 n^(-kappa)
struct RateThreshold {
    double c1;
    double kappa;
};

/// How q is turned into f when thresholds are built without ground truth.
enum class FprNormalization {
    /// f = q * p(p-1)/2, all unordered pairs treated as candidate non-edges.
    AllPairs,
    /// f = q * |E^c|, needs the true non-edge count.
    NonEdges,
};

/// Per-pair gamma = (pi/2) omega_hat Phi^{-1}(1 - f/(p(p-1))) / sqrt(n).
/// Exactly one of f or q is set.
struct FprThreshold {
    std::optional<double> f;
    std::optional<double> q;
};

class ThresholdSpec {
public:
    using Mode = std::variant<FixedThreshold, RateThreshold, FprThreshold>;

    static ThresholdSpec fixed(double gamma);
    static ThresholdSpec rate(double c1, double kappa);
    static ThresholdSpec fpr_f(double f);
    static ThresholdSpec fpr_q(double q);

    const Mode& mode() const noexcept { return mode_; }
    bool is_fpr() const noexcept { return std::holds_alternative<FprThreshold>(mode_); }
    std::string describe() const;

private:
    explicit ThresholdSpec(Mode m) : mode_(m) {}
    Mode mode_;
};

/// Threshold values plus bookkeeping about how they were derived.
struct ThresholdMatrix {
    linalg::SymMatrix values;
    /// FPR mode only: the f actually used and how q was normalized (if q was given).
    std::optional<double> f_used;
    std::optional<FprNormalization> normalization;
    std::vector<std::string> warnings;
};

/// non_edge_count, when provided, converts q to f with the NonEdges convention;
/// otherwise AllPairs is used.
ThresholdMatrix threshold_matrix(const ThresholdSpec& spec, std::size_t n, std::size_t p,
                                 const JackknifeVarMatrix* jack = nullptr,
                                 std::optional<std::size_t> non_edge_count = std::nullopt);

/// Edge (j, k) iff |corr_jk| > gamma_jk.
EdgeSet screen_edges(const CorrMatrix& corr, const linalg::SymMatrix& thresholds);

/// Sorted neighbors of node j (0-based).
std::vector<std::size_t> screen_neighborhood(const CorrMatrix& corr, const linalg::SymMatrix& thresholds,
                                             std::size_t j);

/// Component labels 1..k, assigned in order of each component's lowest node.
class Partition {
public:
    explicit Partition(std::vector<std::size_t> component_id);
    std::size_t p() const noexcept { return ids_.size(); }
    std::size_t component_count() const noexcept { return count_; }
    const std::vector<std::size_t>& component_id() const noexcept { return ids_; }

private:
    std::vector<std::size_t> ids_;
    std::size_t count_ = 0;
};

Partition connected_components(const EdgeSet& e);

/// Same equivalence relation, ignoring label values.
bool compare_partitions(const Partition& a, const Partition& b);

}  // namespace tgrass
