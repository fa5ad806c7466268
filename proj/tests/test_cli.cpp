#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tgrass/commands.hpp"
#include "tgrass/evalbench.hpp"
#include "tgrass/io.hpp"

using namespace tgrass;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("tgrass_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) { return io::read_file(p); }

std::size_t line_count(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2, help exits 0") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"simulate", "--help"}).code == 0);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"simulate", "--scenario", "C", "--bogus", "1", "--out-dir", "x"}).code == 2);
    CHECK(run_cli({"simulate", "--scenario", "C", "--n", "ten", "--out-dir", "x"}).code == 2);
}

TEST_CASE("simulate scenario C") {
    TempDir dir("simc");
    const auto r = run_cli({"simulate", "--scenario", "C", "--p", "3", "--n", "10", "--seed", "4", "--out-dir", dir.path.string()});
    REQUIRE(r.code == 0);
    const auto summary = json::parse(r.out);
    CHECK(summary.at("edges") == 2);
    std::istringstream sigma_in(slurp(dir / "sigma.csv"));
    const auto sigma = io::read_matrix_csv(sigma_in);
    CHECK(sigma(0, 1) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(sigma(0, 2) == doctest::Approx(0.09).epsilon(1e-15));
    const auto data = io::read_data_csv_file(dir / "data.csv");
    CHECK(data.n() == 10);
    CHECK(data.labels()->at(0) == "V1");
    CHECK(fs::exists(dir / "omega.csv"));
    CHECK(line_count(slurp(dir / "edges.tsv")) == 3);
    const auto cfg = io::sim_config_from_json(json::parse(slurp(dir / "config.json")));
    CHECK(cfg.seed == 4);
}

TEST_CASE("simulate rejects an indivisible block dimension") {
    TempDir dir("simb");
    CHECK(run_cli({"simulate", "--scenario", "B", "--p", "55", "--out-dir", dir.path.string()}).code == 2);
    CHECK(run_cli({"simulate", "--p", "50", "--out-dir", dir.path.string()}).code == 2);
}

TEST_CASE("simulate config file with flag override") {
    TempDir dir("simcfg");
    io::write_file(dir / "cfg.json", R"({"scenario": "D", "n": 30, "p": 20, "seed": 9})");
    const auto r = run_cli({"simulate", "--config", dir / "cfg.json", "--n", "12", "--out-dir", dir / "out"});
    REQUIRE(r.code == 0);
    CHECK(io::read_data_csv_file(dir / "out/data.csv").n() == 12);
    CHECK(json::parse(r.out).at("edges") == 90);
    io::write_file(dir / "bad.json", R"({"scenario": "D", "rows": 30})");
    CHECK(run_cli({"simulate", "--config", dir / "bad.json", "--out-dir", dir / "out"}).code == 2);
}

TEST_CASE("simulate is byte-identical across runs") {
    TempDir dir("simdet");
    const std::vector<std::string> base{"simulate", "--scenario", "A", "--p", "30",  "--n",
                                        "25",       "--base",     "t", "--transform", "npn", "--seed", "77"};
    auto a = base, b = base;
    a.insert(a.end(), {"--out-dir", dir / "a"});
    b.insert(b.end(), {"--out-dir", dir / "b", "--threads", "4"});
    const auto ra = run_cli(a), rb = run_cli(b);
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(ra.out == rb.out);
    for (const char* f : {"data.csv", "sigma.csv", "omega.csv", "edges.tsv", "config.json"}) {
        CHECK(slurp(dir / (std::string("a/") + f)) == slurp(dir / (std::string("b/") + f)));
    }
}

TEST_CASE("screen") {
    TempDir dir("screen");
    REQUIRE(run_cli({"simulate", "--scenario", "C", "--p", "10", "--n", "60", "--seed", "1", "--out-dir", dir.path.string()}).code == 0);
    const std::string data = dir / "data.csv";

    auto r = run_cli({"screen", "--data", data, "--gamma", "1.1", "--out", dir / "e.tsv"});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "e.tsv") == "j\tj'\tvalue\n");
    CHECK(json::parse(r.out).at("edges") == 0);

    CHECK(run_cli({"screen", "--data", data, "--out", dir / "e.tsv"}).code == 2);
    CHECK(run_cli({"screen", "--data", data, "--gamma", "0.2", "--fpr-q", "0.1", "--out", dir / "e.tsv"}).code == 2);
    CHECK(run_cli({"screen", "--data", data, "--fpr-q", "0.1", "--estimator", "pearson", "--out", dir / "e.tsv"}).code == 2);
    CHECK(run_cli({"screen", "--data", dir / "missing.csv", "--gamma", "0.2", "--out", dir / "e.tsv"}).code == 1);

    r = run_cli({"screen", "--data", data, "--fpr-q", "0.1", "--out", dir / "f.tsv", "--components", dir / "c.tsv"});
    REQUIRE(r.code == 0);
    const auto s = json::parse(r.out);
    CHECK(s.at("f") == doctest::Approx(4.5));
    CHECK(s.at("q_normalization") == "all-pairs");
    CHECK(line_count(slurp(dir / "c.tsv")) == 11);

    r = run_cli({"screen", "--data", data, "--rate", "0.3,0.25", "--estimator", "pearson", "--out", dir / "g.tsv"});
    CHECK(r.code == 0);
    CHECK(run_cli({"screen", "--data", data, "--fpr-q", "0.1", "--max-jackknife-p", "5", "--out", dir / "h.tsv"}).code == 1);

    io::write_file(dir / "short.csv", "a,b\n1,2\n2,1\n");
    CHECK(run_cli({"screen", "--data", dir / "short.csv", "--fpr-q", "0.1", "--out", dir / "s.tsv"}).code == 1);
}

TEST_CASE("rate threshold keeps every adjacent pair of simulation C") {
    TempDir dir("rate");
    int complete = 0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
        REQUIRE(run_cli({"simulate", "--scenario", "C", "--p", "20", "--n", "500", "--seed", std::to_string(seed),
                         "--out-dir", dir.path.string()})
                    .code == 0);
        REQUIRE(run_cli({"screen", "--data", dir / "data.csv", "--rate", "0.3,0.25", "--out", dir / "est.tsv"}).code ==
                0);
        const EdgeSet est = io::read_edges_tsv_file(dir / "est.tsv", 20);
        bool all = true;
        for (std::size_t j = 0; j + 1 < 20; ++j) all &= est.contains(j, j + 1);
        complete += all;
    }
    CHECK(complete >= 19);
}

TEST_CASE("simulate, screen, score reproduces run_experiment") {
    TempDir dir("round");
    for (const char* est : {"kendall", "pearson"}) {
        REQUIRE(run_cli({"simulate", "--scenario", "A", "--p", "40", "--n", "50", "--transform", "npn", "--seed", "1234",
                     "--out-dir", dir.path.string()})
                    .code == 0);
        REQUIRE(run_cli({"screen", "--data", dir / "data.csv", "--estimator", est, "--gamma", "0.25", "--out",
                     dir / "est.tsv"})
                    .code == 0);
        const auto r = run_cli({"bench", "--mode", "score", "--estimate", dir / "est.tsv", "--truth", dir / "edges.tsv",
                            "--nodes", "40"});
        REQUIRE(r.code == 0);
        const auto m = json::parse(r.out).at("metrics");

        bench::ExperimentSpec spec;
        spec.sim.scenario = sim::Scenario::A;
        spec.sim.p = 40;
        spec.sim.n = 50;
        spec.sim.transform = sim::Transform::Nonparanormal;
        spec.estimator = bench::parse_estimator(est);
        spec.threshold = ThresholdSpec::fixed(0.25);
        spec.base_seed = 1234;
        const auto res = bench::run_experiment(spec);
        CHECK(m == io::to_json(res.per_replicate[0]));
    }
}

TEST_CASE("bench table and sweep") {
    TempDir dir("bench");
    auto r = run_cli({"bench", "--scenario", "B", "--p", "20", "--n", "40", "--replicates", "3", "--seed", "7", "--q",
                  "0.1,0.3", "--out-csv", dir / "t.csv", "--out-json", dir / "t.json"});
    REQUIRE(r.code == 0);
    const auto report = json::parse(r.out);
    REQUIRE(report.at("rows").size() == 2);
    CHECK(report.at("rows")[0].contains("edge_count"));
    CHECK(report.at("rows")[0].contains("fpr"));
    CHECK(report.at("rows")[0].contains("fnr"));
    CHECK(report.at("rows")[1].at("q") == 0.3);
    const auto csv = slurp(dir / "t.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "replicate,q_or_gamma,estimator,scenario,tp,fp,tn,fn,fpr,fnr,edge_count");
    CHECK(line_count(csv) == 7);
    CHECK(slurp(dir / "t.json") == r.out);

    const auto again = run_cli({"bench", "--scenario", "B", "--p", "20", "--n", "40", "--replicates", "3", "--seed", "7",
                            "--q", "0.1,0.3", "--threads", "3"});
    CHECK(again.out == r.out);

    r = run_cli({"bench", "--mode", "sweep", "--scenario", "C", "--p", "15", "--n", "30", "--replicates", "2",
             "--grid-size", "11", "--out-csv", dir / "s.csv"});
    REQUIRE(r.code == 0);
    const auto sweep = slurp(dir / "s.csv");
    CHECK(sweep.substr(0, sweep.find('\n')) == "gamma,mean_fpr,mean_tpr");
    CHECK(line_count(sweep) == 12);
    const double auc = json::parse(r.out).at("auc");
    CHECK(auc > 0.5);
    CHECK(auc <= 1.0);

    CHECK(run_cli({"bench", "--scenario", "C", "--mode", "nope"}).code == 2);
    CHECK(run_cli({"bench", "--scenario", "C", "--estimator", "pearson", "--q", "0.1"}).code == 2);
}

TEST_CASE("bench config file") {
    TempDir dir("benchcfg");
    io::write_file(dir / "b.json", R"({"sim": {"scenario": "D", "p": 20, "n": 30}, "replicates": 2, "seed": 5,
                                       "mode": "table", "gamma": [0.2, 0.4]})");
    auto r = run_cli({"bench", "--config", dir / "b.json"});
    REQUIRE(r.code == 0);
    const auto rep = json::parse(r.out);
    CHECK(rep.at("replicates") == 2);
    CHECK(rep.at("rows")[1].at("gamma") == 0.4);
    r = run_cli({"bench", "--config", dir / "b.json", "--replicates", "1"});
    CHECK(json::parse(r.out).at("replicates") == 1);
    io::write_file(dir / "bad.json", R"({"sim": {"scenario": "D", "p": 20}, "colour": 1})");
    CHECK(run_cli({"bench", "--config", dir / "bad.json"}).code == 2);
}

TEST_CASE("diagnose") {
    const auto r = run_cli({"diagnose", "--scenario", "B", "--p", "50", "--n", "200", "--seed", "3", "--hoeffding-n",
                        "100,1000", "--hoeffding-t", "0.2"});
    REQUIRE(r.code == 0);
    const auto rep = json::parse(r.out);
    CHECK(rep.at("assumptions").at("max_nonedge_corr") == 0.0);
    CHECK(rep.at("assumptions").at("params").at("n") == 200);
    const auto& h = rep.at("hoeffding");
    REQUIRE(h.size() == 2);
    CHECK(double(h[0].at("bound")) == doctest::Approx(0.7358).epsilon(1e-4));
    CHECK(double(h[1].at("bound")) == doctest::Approx(9.08e-5).epsilon(1e-3));
    const auto& p1 = rep.at("proposition1");
    for (const char* k : {"beta_condition", "scaled_precision_condition", "sample_size_condition", "implies_assumption1"}) {
        CHECK(p1.at(k).is_boolean());
    }
    CHECK(rep.contains("neighborhood_size_bound"));
}

TEST_CASE("diagnose from files") {
    TempDir dir("diagf");
    REQUIRE(run_cli({"simulate", "--scenario", "C", "--p", "8", "--n", "10", "--out-dir", dir.path.string()}).code == 0);
    const auto r = run_cli({"diagnose", "--sigma", dir / "sigma.csv", "--omega", dir / "omega.csv", "--edges",
                        dir / "edges.tsv", "--C1", "0.3", "--out", dir / "rep.json"});
    REQUIRE(r.code == 0);
    const auto rep = json::parse(r.out);
    CHECK(rep.at("assumptions").at("min_edge_corr") == doctest::Approx(0.3));
    CHECK(rep.at("max_true_degree") == 2);
    CHECK(slurp(dir / "rep.json") == r.out);
    const auto inferred = run_cli({"diagnose", "--sigma", dir / "sigma.csv"});
    REQUIRE(inferred.code == 0);
    CHECK(json::parse(inferred.out).at("max_true_degree") == 2);
}

TEST_CASE("ingest-prices") {
    TempDir dir("ingest");
    io::write_file(dir / "p.csv", "date,AAA,BBB\n2020-01-01,100,50\n2020-01-02,110,51\n2020-01-03,99,49\n2020-01-06,101,52\n");
    io::write_file(dir / "s.csv", "ticker,sector\nAAA,Tech\nBBB,Energy\n");
    const auto r = run_cli({"ingest-prices", "--prices", dir / "p.csv", "--out", dir / "x.csv", "--sectors", dir / "s.csv",
                        "--labels-out", dir / "l.tsv"});
    REQUIRE(r.code == 0);
    const auto d = io::read_data_csv_file(dir / "x.csv");
    CHECK(d.n() == 3);
    CHECK(d.labels()->at(1) == "BBB");
    CHECK(slurp(dir / "l.tsv") == "ticker\tsector\nAAA\tTech\nBBB\tEnergy\n");

    io::write_file(dir / "bad.csv", "date,AAA\n2020-01-01,100\n2020-01-02,0\n");
    const auto bad = run_cli({"ingest-prices", "--prices", dir / "bad.csv", "--out", dir / "y.csv"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("AAA") != std::string::npos);
}

}
