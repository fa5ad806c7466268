#include "tgrass/screening.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "tgrass/error.hpp"
#include "tgrass/normal.hpp"

namespace tgrass {
namespace {

std::string pair_name(std::size_t a, std::size_t b) {
    return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
}

void check_dims(const CorrMatrix& corr, const linalg::SymMatrix& thresholds) {
    if (corr.dim() != thresholds.dim()) {
        throw InvalidInput("screen: correlation is " + std::to_string(corr.dim()) + "x" + std::to_string(corr.dim()) +
                           " but thresholds are " + std::to_string(thresholds.dim()) + "x" +
                           std::to_string(thresholds.dim()));
    }
    if (corr.kind() == CorrKind::KendallRaw) {
        throw InvalidInput("screen: apply sine_transform to a kendall-raw matrix before screening");
    }
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

// Relabels to 1..k in order of first appearance.
std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& ids) {
    std::vector<std::size_t> out(ids.size());
    std::unordered_map<std::size_t, std::size_t> relabel;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto [it, inserted] = relabel.try_emplace(ids[i], relabel.size() + 1);
        out[i] = it->second;
    }
    return out;
}

}  // namespace

EdgeSet::EdgeSet(std::size_t p, std::vector<Edge> edges) : p_(p), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
        if (e.first >= e.second) throw InvalidInput("EdgeSet: edge " + pair_name(e.first, e.second) + " needs j < j'");
        if (e.second >= p_) throw InvalidInput("EdgeSet: edge " + pair_name(e.first, e.second) + " out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) throw InvalidInput("EdgeSet: duplicate edge " + pair_name(dup->first, dup->second));
}

bool EdgeSet::contains(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

bool is_subset(const EdgeSet& sub, const EdgeSet& super) {
    if (sub.p() != super.p()) throw InvalidInput("is_subset: node counts differ");
    return std::includes(super.edges().begin(), super.edges().end(), sub.edges().begin(), sub.edges().end());
}

ThresholdSpec ThresholdSpec::fixed(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidInput("threshold: gamma must be finite and >= 0");
    return ThresholdSpec(FixedThreshold{gamma});
}

ThresholdSpec ThresholdSpec::rate(double c1, double kappa) {
    if (!(c1 > 0.0) || !std::isfinite(c1)) throw InvalidInput("threshold: C1 must be > 0");
    if (!(kappa > 0.0 && kappa < 0.5)) throw InvalidInput("threshold: kappa must lie in (0, 1/2)");
    return ThresholdSpec(RateThreshold{c1, kappa});
}

ThresholdSpec ThresholdSpec::fpr_f(double f) {
    if (!(f > 0.0) || !std::isfinite(f)) throw InvalidInput("threshold: f must be > 0");
    return ThresholdSpec(FprThreshold{f, std::nullopt});
}

ThresholdSpec ThresholdSpec::fpr_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidInput("threshold: q must lie in (0, 1)");
    return ThresholdSpec(FprThreshold{std::nullopt, q});
}

std::string ThresholdSpec::describe() const {
    std::ostringstream os;
    os.precision(15);
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FixedThreshold>) {
                os << "fixed(gamma=" << m.gamma << ")";
            } else if constexpr (std::is_same_v<T, RateThreshold>) {
                os << "rate(C1=" << m.c1 << ",kappa=" << m.kappa << ")";
            } else {
                if (m.f) os << "fpr(f=" << *m.f << ")";
                else os << "fpr(q=" << *m.q << ")";
            }
        },
        mode_);
    return os.str();
}

ThresholdMatrix threshold_matrix(const ThresholdSpec& spec, std::size_t n, std::size_t p,
                                 const JackknifeVarMatrix* jack, std::optional<std::size_t> non_edge_count) {
    if (p == 0) throw InvalidInput("threshold_matrix: p must be >= 1");
    ThresholdMatrix out{linalg::SymMatrix(p, 0.0), std::nullopt, std::nullopt, {}};
    auto fill_constant = [&](double g) {
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = j + 1; k < p; ++k) out.values.set(j, k, g);
    };

    if (const auto* fixed = std::get_if<FixedThreshold>(&spec.mode())) {
        fill_constant(fixed->gamma);
        return out;
    }
    if (const auto* rate = std::get_if<RateThreshold>(&spec.mode())) {
        if (n < 1) throw InvalidInput("threshold_matrix: n must be >= 1");
        fill_constant(2.0 / 3.0 * rate->c1 * std::pow(static_cast<double>(n), -rate->kappa));
        return out;
    }

    const auto& fpr = std::get<FprThreshold>(spec.mode());
    if (jack == nullptr) throw MissingInput("threshold_matrix: fpr mode needs the jackknife variance matrix");
    if (n < 3) throw InvalidInput("threshold_matrix: fpr mode needs n >= 3, got n=" + std::to_string(n));
    if (jack->dim() != p) throw InvalidInput("threshold_matrix: jackknife matrix dimension does not match p");
    if (p < 2) throw InvalidInput("threshold_matrix: fpr mode needs p >= 2");

    const double pd = static_cast<double>(p);
    const double half_pairs = pd * (pd - 1.0) / 2.0;
    double f = 0.0;
    if (fpr.f) {
        f = *fpr.f;
    } else if (non_edge_count) {
        f = *fpr.q * static_cast<double>(*non_edge_count);
        out.normalization = FprNormalization::NonEdges;
    } else {
        f = *fpr.q * half_pairs;
        out.normalization = FprNormalization::AllPairs;
    }
    if (!(f > 0.0)) throw InvalidInput("threshold_matrix: f must be > 0 (no non-edges to control?)");
    if (!(f < half_pairs)) {
        throw InvalidInput("threshold_matrix: f must be < p(p-1)/2 = " + std::to_string(half_pairs));
    }
    out.f_used = f;

    const double z = normal_quantile(1.0 - f / (pd * (pd - 1.0)));
    const double scale = 0.5 * std::numbers::pi * z / std::sqrt(static_cast<double>(n));
    std::size_t degenerate = 0;
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j + 1; k < p; ++k) {
            const double w2 = (*jack)(j, k);
            if (!(w2 >= 0.0)) throw InvalidInput("threshold_matrix: negative jackknife variance at " + pair_name(j, k));
            if (w2 == 0.0) ++degenerate;
            out.values.set(j, k, scale * std::sqrt(w2));
        }
    }
    if (degenerate > 0) {
        out.warnings.push_back(std::to_string(degenerate) +
                               " pair(s) have zero jackknife variance; their threshold is 0");
    }
    return out;
}

EdgeSet screen_edges(const CorrMatrix& corr, const linalg::SymMatrix& thresholds) {
    check_dims(corr, thresholds);
    const std::size_t p = corr.dim();
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j + 1; k < p; ++k) {
            if (std::abs(corr(j, k)) > thresholds(j, k)) edges.push_back({j, k});
        }
    }
    return EdgeSet(p, std::move(edges));
}

std::vector<std::size_t> screen_neighborhood(const CorrMatrix& corr, const linalg::SymMatrix& thresholds,
                                             std::size_t j) {
    check_dims(corr, thresholds);
    if (j >= corr.dim()) throw InvalidInput("screen_neighborhood: node " + std::to_string(j + 1) + " out of range");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < corr.dim(); ++k) {
        if (k != j && std::abs(corr(j, k)) > thresholds(j, k)) out.push_back(k);
    }
    return out;
}

Partition::Partition(std::vector<std::size_t> component_id) : ids_(std::move(component_id)) {
    if (ids_.empty()) throw InvalidInput("Partition: need at least one node");
    const std::size_t k = *std::max_element(ids_.begin(), ids_.end());
    std::vector<bool> used(k + 1, false);
    for (auto id : ids_) {
        if (id == 0) throw InvalidInput("Partition: labels start at 1");
        used[id] = true;
    }
    if (!std::all_of(used.begin() + 1, used.end(), [](bool u) { return u; })) {
        throw InvalidInput("Partition: labels must cover 1..k contiguously");
    }
    count_ = k;
}

Partition connected_components(const EdgeSet& e) {
    UnionFind uf(e.p());
    for (const auto& edge : e.edges()) uf.unite(edge.first, edge.second);
    std::vector<std::size_t> roots(e.p());
    for (std::size_t i = 0; i < e.p(); ++i) roots[i] = uf.find(i);
    return Partition(canonical_labels(roots));
}

bool compare_partitions(const Partition& a, const Partition& b) {
    if (a.p() != b.p()) throw InvalidInput("compare_partitions: node counts differ");
    return canonical_labels(a.component_id()) == canonical_labels(b.component_id());
}

}  // namespace tgrass
