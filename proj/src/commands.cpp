#include "tgrass/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tgrass/diagnostics.hpp"
#include "tgrass/error.hpp"
#include "tgrass/evalbench.hpp"
#include "tgrass/io.hpp"
#include "tgrass/parallel.hpp"
#include "tgrass/prices.hpp"
#include "tgrass/rankcorr.hpp"
#include "tgrass/screening.hpp"
#include "tgrass/simgen.hpp"

namespace tgrass::cli {
namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
    try {
        return json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
        throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

template <class T>
std::string render(const T& value, void (*writer)(std::ostream&, const T&)) {
    std::ostringstream os;
    writer(os, value);
    return os.str();
}

// Simulation flags shared by simulate, bench, and diagnose.
struct SimFlags {
    std::string config;
    std::string scenario;
    std::size_t n = 0;
    std::size_t p = 0;
    std::string base;
    double theta = 0.0;
    std::string transform;
    std::uint64_t seed = 0;

    CLI::Option* scenario_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* base_opt = nullptr;
    CLI::Option* theta_opt = nullptr;
    CLI::Option* transform_opt = nullptr;
    CLI::Option* seed_opt = nullptr;

    void add_to(CLI::App* app, bool with_config) {
        if (with_config) app->add_option("--config", config, "SimConfig JSON file; flags override its values");
        scenario_opt = app->add_option("--scenario", scenario, "Simulation scenario: A, B, C, or D");
        n_opt = app->add_option("--n", n, "Sample size");
        p_opt = app->add_option("--p", p, "Dimension");
        base_opt = app->add_option("--base", base, "Latent law: gaussian or t");
        theta_opt = app->add_option("--theta", theta, "Student-t degrees of freedom (default 5)");
        transform_opt = app->add_option("--transform", transform, "Marginal transform: none or npn");
        seed_opt = app->add_option("--seed", seed, "64-bit seed");
    }

    // Applies explicit flags over `cfg`, then validates. Problems are usage errors.
    sim::SimConfig resolve(sim::SimConfig cfg) const {
        try {
            if (*scenario_opt) cfg.scenario = sim::parse_scenario(scenario);
            if (*n_opt) cfg.n = n;
            if (*p_opt) cfg.p = p;
            if (*base_opt) cfg.base = sim::parse_base(base);
            if (*theta_opt) cfg.theta = theta;
            if (*transform_opt) cfg.transform = sim::parse_transform(transform);
            if (*seed_opt) cfg.seed = seed;
            cfg.validate();
        } catch (const InvalidInput& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }

    sim::SimConfig load() const {
        sim::SimConfig cfg;
        if (!config.empty()) {
            try {
                cfg = io::sim_config_from_json(load_json_file(config));
            } catch (const InvalidInput& e) {
                throw UsageError(e.what());
            }
        } else if (!*scenario_opt) {
            throw UsageError("--scenario is required (or supply --config)");
        }
        return resolve(cfg);
    }
};

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    SimFlags sim;
    std::string out_dir;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
    const sim::SimConfig cfg = o.sim.load();
    RngStream rng(cfg.seed);
    const sim::GroundTruth gt = sim::generate_ground_truth(cfg, rng);
    const sim::Sample s = sim::sample_detailed(gt, cfg, rng);

    std::vector<std::string> labels;
    for (std::size_t j = 0; j < cfg.p; ++j) labels.push_back("V" + std::to_string(j + 1));
    DataMatrix data = s.observed;
    data.set_labels(labels);

    std::filesystem::create_directories(o.out_dir);
    io::write_file(join_path(o.out_dir, "data.csv"), render(data, &io::write_data_csv));
    io::write_file(join_path(o.out_dir, "sigma.csv"), render(gt.sigma, &io::write_matrix_csv));
    io::write_file(join_path(o.out_dir, "omega.csv"), render(gt.omega, &io::write_matrix_csv));
    std::ostringstream edges;
    io::write_edges_tsv(edges, gt.edges, gt.omega);
    io::write_file(join_path(o.out_dir, "edges.tsv"), edges.str());
    io::write_file(join_path(o.out_dir, "config.json"), dump(io::to_json(cfg)));

    const auto ext = linalg::eig_extremes(gt.sigma);
    json summary = {{"config", io::to_json(cfg)},
                    {"edges", gt.edges.size()},
                    {"lambda_min", ext.lambda_min},
                    {"lambda_max", ext.lambda_max}};
    if (!s.transforms.empty()) {
        static const char* names[] = {"exp", "cube", "fifth", "shifted-cube"};
        json t = json::array();
        for (auto tr : s.transforms) t.push_back(names[static_cast<int>(tr)]);
        summary["transforms"] = t;
    }
    out << dump(summary);
    return kExitOk;
}

// ------------------------------------------------------------------ screen

struct ThresholdFlags {
    std::optional<double> gamma;
    std::vector<double> rate;
    std::optional<double> fpr_q;
    std::optional<double> fpr_f;

    void add_to(CLI::App* app) {
        app->add_option("--gamma", gamma, "Fixed threshold");
        app->add_option("--rate", rate, "Rate threshold C1,KAPPA: gamma = (2/3) C1 n^-kappa")
            ->delimiter(',')
            ->expected(2);
        app->add_option("--fpr-q", fpr_q, "FPR-controlling threshold at level q (f = q p(p-1)/2)");
        app->add_option("--fpr-f", fpr_f, "FPR-controlling threshold with explicit f");
    }

    ThresholdSpec resolve() const {
        const int given = int(gamma.has_value()) + int(!rate.empty()) + int(fpr_q.has_value()) + int(fpr_f.has_value());
        if (given != 1) throw UsageError("give exactly one of --gamma, --rate, --fpr-q, --fpr-f");
        try {
            if (gamma) return ThresholdSpec::fixed(*gamma);
            if (!rate.empty()) return ThresholdSpec::rate(rate[0], rate[1]);
            if (fpr_q) return ThresholdSpec::fpr_q(*fpr_q);
            return ThresholdSpec::fpr_f(*fpr_f);
        } catch (const InvalidInput& e) {
            throw UsageError(e.what());
        }
    }
};

struct ScreenOptions {
    std::string data;
    std::string estimator = "kendall";
    ThresholdFlags threshold;
    std::string out;
    std::string components;
    std::size_t max_jackknife_p = 2000;
};

int cmd_screen(const ScreenOptions& o, std::ostream& out) {
    const ThresholdSpec spec = o.threshold.resolve();
    bench::Estimator est;
    try {
        est = bench::parse_estimator(o.estimator);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    if (spec.is_fpr() && est != bench::Estimator::TransellipticalGrass) {
        throw UsageError("--fpr-* thresholds need --estimator kendall");
    }

    const DataMatrix data = io::read_data_csv_file(o.data);
    std::optional<JackknifeVarMatrix> jack;
    if (spec.is_fpr()) {
        if (data.n() < 3) throw InvalidInput("--fpr-* thresholds need at least 3 observations");
        if (data.p() > o.max_jackknife_p) {
            throw InvalidInput("p=" + std::to_string(data.p()) + " exceeds --max-jackknife-p=" +
                               std::to_string(o.max_jackknife_p) + " (jackknife cost is O(p^2 n^2))");
        }
        jack = jackknife_matrix(data);
    }
    const CorrMatrix corr = bench::estimate_correlation(data, est);
    const ThresholdMatrix th = threshold_matrix(spec, data.n(), data.p(), jack ? &*jack : nullptr);
    const EdgeSet edges = screen_edges(corr, th.values);

    std::ostringstream tsv;
    io::write_edges_tsv(tsv, edges, corr.entries());
    io::write_file(o.out, tsv.str());

    json summary = {{"estimator", bench::to_string(est)},
                    {"correlation", to_string(corr.kind())},
                    {"threshold", spec.describe()},
                    {"n", data.n()},
                    {"p", data.p()},
                    {"edges", edges.size()},
                    {"warnings", th.warnings}};
    if (th.f_used) summary["f"] = *th.f_used;
    if (th.normalization) summary["q_normalization"] = "all-pairs";
    if (!o.components.empty()) {
        const Partition part = connected_components(edges);
        io::write_file(o.components, render(part, &io::write_partition_tsv));
        summary["components"] = part.component_count();
    }
    out << dump(summary);
    return kExitOk;
}

// ----------------------------------------------------------- ingest-prices

struct IngestOptions {
    std::string prices;
    std::string out;
    std::string sectors;
    std::string labels_out;
};

int cmd_ingest(const IngestOptions& o, std::ostream& out) {
    prices::PriceTable table = prices::read_price_table_file(o.prices);
    if (!o.sectors.empty()) {
        std::ifstream s(o.sectors);
        if (!s) throw std::runtime_error("cannot open '" + o.sectors + "' for reading");
        prices::attach_sectors(table, s);
    }
    const DataMatrix data = prices::ingest(table);
    io::write_file(o.out, render(data, &io::write_data_csv));
    if (!o.labels_out.empty()) {
        std::ostringstream os;
        os << "ticker\tsector\n";
        for (std::size_t j = 0; j < table.tickers.size(); ++j) {
            os << table.tickers[j] << '\t' << (table.sectors ? (*table.sectors)[j] : "") << '\n';
        }
        io::write_file(o.labels_out, os.str());
    }
    out << dump({{"rows", data.n()}, {"tickers", data.p()}, {"sectors", table.sectors.has_value()}});
    return kExitOk;
}

// ------------------------------------------------------------------- bench

struct BenchOptions {
    std::string config;
    SimFlags sim;
    std::string mode;
    std::string estimator;
    std::size_t replicates = 0;
    std::vector<double> q;
    std::vector<double> gamma;
    std::vector<double> grid;
    std::size_t grid_size = 0;
    std::string out_csv;
    std::string out_json;
    // score mode
    std::string estimate;
    std::string truth;
    std::size_t p = 0;

    CLI::Option* mode_opt = nullptr;
    CLI::Option* estimator_opt = nullptr;
    CLI::Option* replicates_opt = nullptr;
    CLI::Option* q_opt = nullptr;
    CLI::Option* gamma_opt = nullptr;
    CLI::Option* grid_opt = nullptr;
    CLI::Option* grid_size_opt = nullptr;
};

struct BenchPlan {
    bench::ExperimentSpec spec;
    std::string mode = "table";
    std::vector<double> q;
    std::vector<double> gamma;
    std::vector<double> grid;
};

BenchPlan resolve_bench(const BenchOptions& o) {
    BenchPlan plan;
    sim::SimConfig cfg;
    std::size_t grid_size = 50;
    if (!o.config.empty()) {
        const json j = load_json_file(o.config);
        if (!j.is_object()) throw UsageError("bench config must be a JSON object");
        try {
            for (const auto& [key, value] : j.items()) {
                if (key == "sim") cfg = io::sim_config_from_json(value);
                else if (key == "mode") plan.mode = value.get<std::string>();
                else if (key == "estimator") plan.spec.estimator = bench::parse_estimator(value.get<std::string>());
                else if (key == "replicates") plan.spec.replicates = value.get<std::size_t>();
                else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
                else if (key == "q") plan.q = value.get<std::vector<double>>();
                else if (key == "gamma") plan.gamma = value.get<std::vector<double>>();
                else if (key == "grid") plan.grid = value.get<std::vector<double>>();
                else if (key == "grid_size") grid_size = value.get<std::size_t>();
                else throw UsageError("bench config: unknown key '" + key + "'");
            }
        } catch (const json::exception& e) {
            throw UsageError(std::string("bench config: ") + e.what());
        } catch (const InvalidInput& e) {
            throw UsageError(std::string("bench config: ") + e.what());
        }
    } else if (!*o.sim.scenario_opt) {
        throw UsageError("--scenario is required (or supply --config)");
    }
    cfg = o.sim.resolve(cfg);
    plan.spec.sim = cfg;
    plan.spec.base_seed = cfg.seed;
    try {
        if (*o.mode_opt) plan.mode = o.mode;
        if (*o.estimator_opt) plan.spec.estimator = bench::parse_estimator(o.estimator);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    if (*o.replicates_opt) plan.spec.replicates = o.replicates;
    if (*o.q_opt) plan.q = o.q;
    if (*o.gamma_opt) plan.gamma = o.gamma;
    if (*o.grid_opt) plan.grid = o.grid;
    if (*o.grid_size_opt) grid_size = o.grid_size;
    if (plan.spec.replicates < 1) throw UsageError("--replicates must be >= 1");

    if (plan.mode == "table") {
        if (!plan.q.empty() && !plan.gamma.empty()) throw UsageError("table mode takes --q or --gamma, not both");
        if (plan.q.empty() && plan.gamma.empty()) plan.q = {0.01, 0.1, 0.3};
    } else if (plan.mode == "sweep") {
        if (plan.grid.empty()) {
            if (grid_size < 2) throw UsageError("--grid-size must be >= 2");
            plan.grid = bench::linear_grid(grid_size);
        }
    } else {
        throw UsageError("unknown bench mode '" + plan.mode + "' (expected table, sweep, or score)");
    }
    return plan;
}

json plan_header(const BenchPlan& plan) {
    return {{"mode", plan.mode},
            {"sim", io::to_json(plan.spec.sim)},
            {"estimator", bench::to_string(plan.spec.estimator)},
            {"replicates", plan.spec.replicates},
            {"base_seed", plan.spec.base_seed}};
}

int run_bench_table(const BenchOptions& o, const BenchPlan& plan, std::ostream& out) {
    std::vector<ThresholdSpec> thresholds;
    std::vector<double> levels;
    try {
        for (double q : plan.q) thresholds.push_back(ThresholdSpec::fpr_q(q));
        for (double g : plan.gamma) thresholds.push_back(ThresholdSpec::fixed(g));
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    levels = plan.q.empty() ? plan.gamma : plan.q;
    bench::ExperimentSpec spec = plan.spec;
    spec.threshold = thresholds.front();
    try {
        spec.validate();
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    const auto results = bench::run_table(spec, thresholds);

    const std::string est = bench::to_string(spec.estimator);
    const std::string scen = sim::to_string(spec.sim.scenario);
    std::ostringstream csv;
    csv << "replicate,q_or_gamma,estimator,scenario,tp,fp,tn,fn,fpr,fnr,edge_count\n";
    json rows = json::array();
    for (std::size_t t = 0; t < results.size(); ++t) {
        const auto& res = results[t];
        for (std::size_t r = 0; r < res.per_replicate.size(); ++r) {
            const auto& m = res.per_replicate[r];
            csv << r << ',' << io::format_double(levels[t]) << ',' << est << ',' << scen << ',' << m.tp << ','
                << m.fp << ',' << m.tn << ',' << m.fn << ',' << io::format_double(m.fpr) << ','
                << io::format_double(m.fnr) << ',' << m.edge_count << '\n';
        }
        json row = {{plan.q.empty() ? "gamma" : "q", levels[t]},
                    {"edge_count", res.mean.edge_count},
                    {"fpr", res.mean.fpr},
                    {"fnr", res.mean.fnr},
                    {"mean", io::to_json(res.mean)}};
        if (thresholds[t].is_fpr()) {
            double f_mean = 0.0;
            for (const auto& f : res.f_used) f_mean += f.value_or(0.0);
            row["f_mean"] = f_mean / static_cast<double>(res.f_used.size());
            row["q_normalization"] = "non-edges";
        }
        rows.push_back(row);
    }
    json report = plan_header(plan);
    report["rows"] = rows;
    if (!o.out_csv.empty()) io::write_file(o.out_csv, csv.str());
    if (!o.out_json.empty()) io::write_file(o.out_json, dump(report));
    out << dump(report);
    return kExitOk;
}

int run_bench_sweep(const BenchOptions& o, const BenchPlan& plan, std::ostream& out) {
    bench::SweepResult sweep;
    try {
        sweep = bench::roc_sweep(plan.spec, plan.grid);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    std::ostringstream csv;
    csv << "gamma,mean_fpr,mean_tpr\n";
    for (std::size_t g = 0; g < sweep.grid.size(); ++g) {
        csv << io::format_double(sweep.grid[g]) << ',' << io::format_double(sweep.mean_fpr[g]) << ','
            << io::format_double(sweep.mean_tpr[g]) << '\n';
    }
    json report = plan_header(plan);
    report["auc"] = bench::auc(sweep);
    json per = json::array();
    for (std::size_t r = 0; r < sweep.replicate_fpr.size(); ++r) {
        per.push_back(bench::auc(sweep.replicate_fpr[r], sweep.replicate_tpr[r]));
    }
    report["replicate_auc"] = per;
    if (!o.out_csv.empty()) io::write_file(o.out_csv, csv.str());
    if (!o.out_json.empty()) io::write_file(o.out_json, dump(report));
    out << dump(report);
    return kExitOk;
}

int run_bench_score(const BenchOptions& o, std::ostream& out) {
    if (o.estimate.empty() || o.truth.empty() || o.p == 0) {
        throw UsageError("score mode needs --estimate, --truth, and --p");
    }
    const EdgeSet est = io::read_edges_tsv_file(o.estimate, o.p);
    const EdgeSet truth = io::read_edges_tsv_file(o.truth, o.p);
    const bench::ConfusionMetrics m = bench::confusion(est, truth);
    const json report = {{"mode", "score"}, {"metrics", io::to_json(m)}};
    if (!o.out_json.empty()) io::write_file(o.out_json, dump(report));
    out << dump(report);
    return kExitOk;
}

int cmd_bench(const BenchOptions& o, std::ostream& out) {
    if (*o.mode_opt && o.mode == "score") return run_bench_score(o, out);
    const BenchPlan plan = resolve_bench(o);
    return plan.mode == "table" ? run_bench_table(o, plan, out) : run_bench_sweep(o, plan, out);
}

// ---------------------------------------------------------------- diagnose

struct DiagnoseOptions {
    SimFlags sim;
    std::string sigma;
    std::string omega;
    std::string edges;
    diag::AssumptionParams params;
    std::vector<std::size_t> hoeffding_n = {50, 100, 200, 500, 1000};
    std::vector<double> hoeffding_t = {0.05, 0.1, 0.2, 0.3};
    std::string out_path;
    CLI::Option* sample_size_opt = nullptr;
};

sim::GroundTruth truth_from_files(const DiagnoseOptions& o) {
    linalg::SymMatrix sigma = io::read_matrix_csv_file(o.sigma);
    for (std::size_t i = 0; i < sigma.dim(); ++i) {
        if (std::abs(sigma(i, i) - 1.0) > 1e-10) throw InvalidInput("--sigma must have unit diagonal");
    }
    linalg::SymMatrix omega = o.omega.empty() ? linalg::invert_pd(sigma) : io::read_matrix_csv_file(o.omega);
    if (omega.dim() != sigma.dim()) throw InvalidInput("--omega dimension does not match --sigma");
    std::optional<EdgeSet> edges;
    if (!o.edges.empty()) {
        edges = io::read_edges_tsv_file(o.edges, sigma.dim());
    } else {
        std::vector<Edge> e;
        for (std::size_t j = 0; j < omega.dim(); ++j)
            for (std::size_t k = j + 1; k < omega.dim(); ++k)
                if (std::abs(omega(j, k)) > sim::kEdgeSupportTol) e.push_back({j, k});
        edges = EdgeSet(omega.dim(), std::move(e));
    }
    return sim::GroundTruth{std::move(sigma), std::move(omega), std::move(*edges), sim::Scenario::A};
}

int cmd_diagnose(const DiagnoseOptions& o, std::ostream& out) {
    json report;
    std::optional<sim::GroundTruth> gt;
    diag::AssumptionParams params = o.params;
    if (!o.sigma.empty()) {
        gt = truth_from_files(o);
        report["source"] = "files";
    } else {
        const sim::SimConfig cfg = o.sim.load();
        RngStream rng(cfg.seed);
        gt = sim::generate_ground_truth(cfg, rng);
        report["source"] = io::to_json(cfg);
        if (!*o.sample_size_opt) params.n = cfg.n;
    }
    try {
        params.validate();
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    const auto& p = params;
    report["assumptions"] = io::to_json(diag::check_assumptions(*gt, p));
    report["proposition1"] = io::to_json(diag::check_proposition1(*gt, p.n, p.c1, p.kappa, p.xi));

    std::size_t max_degree = 0;
    std::vector<std::size_t> degree(gt->sigma.dim(), 0);
    for (const auto& e : gt->edges.edges()) {
        max_degree = std::max({max_degree, ++degree[e.first], ++degree[e.second]});
    }
    report["neighborhood_size_bound"] = diag::neighborhood_size_bound(*gt, p.n, p.c1, p.kappa);
    report["max_true_degree"] = max_degree;

    json curve = json::array();
    for (auto n : o.hoeffding_n) {
        for (double t : o.hoeffding_t) {
            try {
                curve.push_back({{"n", n}, {"t", t}, {"bound", diag::hoeffding_bound(n, t)}});
            } catch (const InvalidInput& e) {
                throw UsageError(e.what());
            }
        }
    }
    report["hoeffding"] = curve;

    if (!o.out_path.empty()) io::write_file(o.out_path, dump(report));
    out << dump(report);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transelliptical graphical sure screening workbench"};
    app.name("tgrass");
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all hardware threads)");

    SimulateOptions sim_opts;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic scenario and its ground truth");
    sim_opts.sim.add_to(simulate, true);
    simulate->add_option("--out-dir", sim_opts.out_dir, "Output directory")->required();
    simulate->add_option("--threads", threads, "Worker threads (0 = all hardware threads)");

    ScreenOptions screen_opts;
    auto* screen = app.add_subcommand("screen", "Threshold a correlation estimate into an edge set");
    screen->add_option("--data", screen_opts.data, "Data CSV (n rows by p columns)")->required();
    screen->add_option("--estimator", screen_opts.estimator, "kendall (sine-transformed tau) or pearson");
    screen_opts.threshold.add_to(screen);
    screen->add_option("--out", screen_opts.out, "Edge list TSV output")->required();
    screen->add_option("--components", screen_opts.components, "Also write the connected components TSV here");
    screen->add_option("--max-jackknife-p", screen_opts.max_jackknife_p, "Largest p allowed for --fpr-* thresholds");
    screen->add_option("--threads", threads, "Worker threads (0 = all hardware threads)");

    IngestOptions ingest_opts;
    auto* ingest = app.add_subcommand("ingest-prices", "Turn closing prices into standardized log returns");
    ingest->add_option("--prices", ingest_opts.prices, "Price CSV: date column then one column per ticker")
        ->required();
    ingest->add_option("--out", ingest_opts.out, "Output data CSV")->required();
    ingest->add_option("--sectors", ingest_opts.sectors, "Optional ticker,sector CSV");
    ingest->add_option("--labels-out", ingest_opts.labels_out, "Write ticker/sector labels TSV here");

    BenchOptions bench_opts;
    auto* benchcmd = app.add_subcommand("bench", "Replicated experiments: FPR/FNR tables, ROC sweeps, scoring");
    benchcmd->add_option("--config", bench_opts.config, "Experiment JSON; flags override its values");
    bench_opts.sim.add_to(benchcmd, false);
    bench_opts.mode_opt = benchcmd->add_option("--mode", bench_opts.mode, "table, sweep, or score");
    bench_opts.estimator_opt = benchcmd->add_option("--estimator", bench_opts.estimator, "kendall or pearson");
    bench_opts.replicates_opt = benchcmd->add_option("--replicates", bench_opts.replicates, "Replicate count");
    bench_opts.q_opt = benchcmd->add_option("--q", bench_opts.q, "FPR levels (table mode)")->delimiter(',');
    bench_opts.gamma_opt =
        benchcmd->add_option("--gamma", bench_opts.gamma, "Fixed thresholds (table mode)")->delimiter(',');
    bench_opts.grid_opt = benchcmd->add_option("--grid", bench_opts.grid, "Sweep thresholds")->delimiter(',');
    bench_opts.grid_size_opt =
        benchcmd->add_option("--grid-size", bench_opts.grid_size, "Evenly spaced sweep points on [0,1]");
    benchcmd->add_option("--out-csv", bench_opts.out_csv, "Per-replicate (table) or curve (sweep) CSV");
    benchcmd->add_option("--out-json", bench_opts.out_json, "Aggregate JSON report");
    benchcmd->add_option("--estimate", bench_opts.estimate, "Score mode: estimated edge TSV");
    benchcmd->add_option("--truth", bench_opts.truth, "Score mode: true edge TSV");
    benchcmd->add_option("--nodes", bench_opts.p, "Score mode: node count");
    benchcmd->add_option("--threads", threads, "Worker threads (0 = all hardware threads)");

    DiagnoseOptions diag_opts;
    auto* diagnose = app.add_subcommand("diagnose", "Check screening assumptions on a ground truth");
    diag_opts.sim.add_to(diagnose, true);
    diagnose->add_option("--sigma", diag_opts.sigma, "Unit-diagonal correlation CSV (instead of a scenario)");
    diagnose->add_option("--omega", diag_opts.omega, "Precision CSV (default: inverse of --sigma)");
    diagnose->add_option("--edges", diag_opts.edges, "True edge TSV (default: support of omega)");
    diag_opts.sample_size_opt = diagnose->add_option(
        "--sample-size", diag_opts.params.n, "n used in the bounds (default: the scenario's --n, else 100)");
    diagnose->add_option("--C1", diag_opts.params.c1, "Minimum-correlation constant");
    diagnose->add_option("--kappa", diag_opts.params.kappa, "Minimum-correlation rate");
    diagnose->add_option("--xi", diag_opts.params.xi, "Dimension growth exponent");
    diagnose->add_option("--C2", diag_opts.params.c2, "Eigenvalue constant");
    diagnose->add_option("--alpha", diag_opts.params.alpha, "Eigenvalue growth exponent");
    diagnose->add_option("--small-ratio", diag_opts.params.small_ratio, "Cutoff for the non-edge surrogate");
    diagnose->add_option("--hoeffding-n", diag_opts.hoeffding_n, "Sample sizes for the Hoeffding curve")
        ->delimiter(',');
    diagnose->add_option("--hoeffding-t", diag_opts.hoeffding_t, "Deviations for the Hoeffding curve")
        ->delimiter(',');
    diagnose->add_option("--out", diag_opts.out_path, "Write the JSON report here as well");
    diagnose->add_option("--threads", threads, "Worker threads (0 = all hardware threads)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    set_thread_count(threads);
    try {
        if (*simulate) return cmd_simulate(sim_opts, out);
        if (*screen) return cmd_screen(screen_opts, out);
        if (*ingest) return cmd_ingest(ingest_opts, out);
        if (*benchcmd) return cmd_bench(bench_opts, out);
        if (*diagnose) return cmd_diagnose(diag_opts, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace tgrass::cli
