#include "tgrass/evalbench.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "tgrass/error.hpp"
#include "tgrass/parallel.hpp"

namespace tgrass::bench {
namespace {

struct Replicate {
    sim::GroundTruth truth;
    CorrMatrix corr;
    std::optional<JackknifeVarMatrix> jack;
};

Replicate make_replicate(const ExperimentSpec& spec, std::size_t r, bool need_jackknife) {
    RngStream rng = RngStream::for_replicate(spec.base_seed, r);
    sim::SimConfig cfg = spec.sim;
    sim::GroundTruth gt = sim::generate_ground_truth(cfg, rng);
    const DataMatrix data = sim::sample(gt, cfg, rng);
    CorrMatrix corr = estimate_correlation(data, spec.estimator);
    std::optional<JackknifeVarMatrix> jack;
    if (need_jackknife) jack = jackknife_matrix(data);
    return Replicate{std::move(gt), std::move(corr), std::move(jack)};
}

std::size_t non_edge_count(const sim::GroundTruth& gt) {
    const std::size_t p = gt.sigma.dim();
    return p * (p - 1) / 2 - gt.edges.size();
}

// Runs body(r) for each replicate, rewrapping failures with the replicate index.
template <class F>
void for_each_replicate(std::size_t replicates, F&& body) {
    parallel_for(replicates, [&](std::size_t r) {
        try {
            body(r);
        } catch (const InvalidInput& e) {
            throw InvalidInput("replicate " + std::to_string(r) + ": " + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error("replicate " + std::to_string(r) + ": " + e.what());
        }
    });
}

}  // namespace

ConfusionMetrics confusion(const EdgeSet& estimate, const EdgeSet& truth) {
    if (estimate.p() != truth.p()) {
        throw InvalidInput("confusion: estimate has p=" + std::to_string(estimate.p()) + " but truth has p=" +
                           std::to_string(truth.p()));
    }
    const std::size_t p = truth.p();
    const std::size_t total = p * (p - 1) / 2;
    std::vector<Edge> common;
    std::set_intersection(estimate.edges().begin(), estimate.edges().end(), truth.edges().begin(),
                          truth.edges().end(), std::back_inserter(common));
    ConfusionMetrics m;
    m.tp = common.size();
    m.fp = estimate.size() - m.tp;
    m.fn = truth.size() - m.tp;
    m.tn = total - m.tp - m.fp - m.fn;
    m.edge_count = estimate.size();
    m.fpr = (m.fp + m.tn) ? static_cast<double>(m.fp) / static_cast<double>(m.fp + m.tn) : 0.0;
    m.fnr = (m.tp + m.fn) ? static_cast<double>(m.fn) / static_cast<double>(m.tp + m.fn) : 0.0;
    return m;
}

std::string to_string(Estimator e) {
    return e == Estimator::TransellipticalGrass ? "transelliptical-grass" : "pearson-grass";
}

Estimator parse_estimator(const std::string& s) {
    if (s == "kendall" || s == "transelliptical-grass") return Estimator::TransellipticalGrass;
    if (s == "pearson" || s == "pearson-grass") return Estimator::PearsonGrass;
    throw InvalidInput("unknown estimator '" + s + "' (expected kendall or pearson)");
}

CorrMatrix estimate_correlation(const DataMatrix& data, Estimator e) {
    return e == Estimator::TransellipticalGrass ? sine_transform(kendall_matrix(data)) : pearson_matrix(data);
}

void ExperimentSpec::validate() const {
    sim.validate();
    if (replicates < 1) throw InvalidInput("experiment: replicates must be >= 1");
    if (threshold.is_fpr() && estimator != Estimator::TransellipticalGrass) {
        throw InvalidInput("experiment: fpr thresholds use the Kendall jackknife and need the transelliptical-grass "
                           "estimator");
    }
    if (threshold.is_fpr() && sim.n < 3) throw InvalidInput("experiment: fpr thresholds need n >= 3");
}

MetricMeans mean_of(std::span<const ConfusionMetrics> metrics) {
    MetricMeans m;
    if (metrics.empty()) return m;
    for (const auto& c : metrics) {
        m.tp += static_cast<double>(c.tp);
        m.fp += static_cast<double>(c.fp);
        m.tn += static_cast<double>(c.tn);
        m.fn += static_cast<double>(c.fn);
        m.fpr += c.fpr;
        m.fnr += c.fnr;
        m.edge_count += static_cast<double>(c.edge_count);
    }
    const double k = static_cast<double>(metrics.size());
    m.tp /= k;
    m.fp /= k;
    m.tn /= k;
    m.fn /= k;
    m.fpr /= k;
    m.fnr /= k;
    m.edge_count /= k;
    return m;
}

std::vector<ExperimentResult> run_table(const ExperimentSpec& spec, const std::vector<ThresholdSpec>& thresholds) {
    if (thresholds.empty()) throw InvalidInput("run_table: no thresholds given");
    bool need_jack = false;
    for (const auto& t : thresholds) {
        ExperimentSpec one = spec;
        one.threshold = t;
        one.validate();
        need_jack = need_jack || t.is_fpr();
    }

    std::vector<ExperimentResult> out(thresholds.size());
    for (auto& res : out) {
        res.per_replicate.resize(spec.replicates);
        res.f_used.resize(spec.replicates);
    }
    for_each_replicate(spec.replicates, [&](std::size_t r) {
        const Replicate rep = make_replicate(spec, r, need_jack);
        const std::size_t p = rep.corr.dim();
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            const ThresholdMatrix th =
                threshold_matrix(thresholds[t], spec.sim.n, p, rep.jack ? &*rep.jack : nullptr,
                                 thresholds[t].is_fpr() ? std::optional(non_edge_count(rep.truth)) : std::nullopt);
            out[t].per_replicate[r] = confusion(screen_edges(rep.corr, th.values), rep.truth.edges);
            out[t].f_used[r] = th.f_used;
        }
    });
    for (auto& res : out) res.mean = mean_of(res.per_replicate);
    return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) { return std::move(run_table(spec, {spec.threshold})[0]); }

std::vector<double> linear_grid(std::size_t count, double lo, double hi) {
    if (count < 2) throw InvalidInput("linear_grid: need at least 2 points");
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    g.back() = hi;
    return g;
}

SweepResult roc_sweep(const ExperimentSpec& spec, const std::vector<double>& grid) {
    ExperimentSpec checked = spec;
    checked.threshold = ThresholdSpec::fixed(0.0);
    checked.validate();
    if (grid.empty()) throw InvalidInput("roc_sweep: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end())) throw InvalidInput("roc_sweep: grid must be sorted ascending");
    if (grid.front() < 0.0) throw InvalidInput("roc_sweep: grid values must be >= 0");

    SweepResult out;
    out.grid = grid;
    out.replicate_tpr.assign(spec.replicates, std::vector<double>(grid.size()));
    out.replicate_fpr.assign(spec.replicates, std::vector<double>(grid.size()));
    for_each_replicate(spec.replicates, [&](std::size_t r) {
        const Replicate rep = make_replicate(checked, r, false);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const ThresholdMatrix th = threshold_matrix(ThresholdSpec::fixed(grid[g]), spec.sim.n, rep.corr.dim());
            const ConfusionMetrics m = confusion(screen_edges(rep.corr, th.values), rep.truth.edges);
            out.replicate_tpr[r][g] = m.tpr();
            out.replicate_fpr[r][g] = m.fpr;
        }
    });
    out.mean_tpr.assign(grid.size(), 0.0);
    out.mean_fpr.assign(grid.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t r = 0; r < spec.replicates; ++r) {
            out.mean_tpr[g] += out.replicate_tpr[r][g];
            out.mean_fpr[g] += out.replicate_fpr[r][g];
        }
        out.mean_tpr[g] /= static_cast<double>(spec.replicates);
        out.mean_fpr[g] /= static_cast<double>(spec.replicates);
    }
    return out;
}

double auc(std::span<const double> fpr, std::span<const double> tpr) {
    if (fpr.size() != tpr.size()) throw InvalidInput("auc: fpr and tpr differ in length");
    if (fpr.empty()) throw InvalidInput("auc: need at least one point");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(fpr.size() + 2);
    pts.emplace_back(0.0, 0.0);
    for (std::size_t i = 0; i < fpr.size(); ++i) pts.emplace_back(fpr[i], tpr[i]);
    pts.emplace_back(1.0, 1.0);
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        area += (pts[i].first - pts[i - 1].first) * 0.5 * (pts[i].second + pts[i - 1].second);
    }
    return std::clamp(area, 0.0, 1.0);
}

double auc(const SweepResult& sweep) { return auc(sweep.mean_fpr, sweep.mean_tpr); }

}  // namespace tgrass::bench
