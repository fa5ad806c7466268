#include "tgrass/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "tgrass/error.hpp"

namespace tgrass::io {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return in;
}

std::vector<double> numeric_row(const std::vector<std::string>& cells, std::size_t row) {
    std::vector<double> out(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (!parse_double(cells[c], out[c])) {
            throw InvalidInput("row " + std::to_string(row) + ", column " + std::to_string(c + 1) +
                               ": not a number: '" + cells[c] + "'");
        }
    }
    return out;
}

// Optional doubles serialize as null when absent or non-finite.
nlohmann::json number_or_null(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

TextTable read_table(std::istream& in, bool force_header) {
    TextTable t;
    std::string line;
    bool first = true;
    std::size_t width = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (first && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        if (first) {
            t.delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
            auto cells = split(line, t.delimiter);
            width = cells.size();
            bool numeric = true;
            double tmp;
            for (const auto& c : cells) numeric = numeric && parse_double(c, tmp);
            if (force_header || !numeric) t.header = std::move(cells);
            else t.rows.push_back(std::move(cells));
            first = false;
            continue;
        }
        auto cells = split(line, t.delimiter);
        if (cells.size() != width) {
            throw InvalidInput("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                               " fields, found " + std::to_string(cells.size()));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

TextTable read_table_file(const std::string& path, bool force_header) {
    auto in = open_input(path);
    return read_table(in, force_header);
}

DataMatrix read_data_csv(std::istream& in) {
    const TextTable t = read_table(in);
    std::vector<std::vector<double>> rows;
    rows.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) rows.push_back(numeric_row(t.rows[i], i + 1));
    if (rows.empty()) throw InvalidInput("data file has no numeric rows");
    return DataMatrix::from_rows(rows, t.header);
}

DataMatrix read_data_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_data_csv(in);
}

void write_data_csv(std::ostream& out, const DataMatrix& data) {
    if (data.labels()) {
        const auto& l = *data.labels();
        for (std::size_t j = 0; j < l.size(); ++j) out << (j ? "," : "") << l[j];
        out << '\n';
    }
    for (std::size_t i = 0; i < data.n(); ++i) {
        for (std::size_t j = 0; j < data.p(); ++j) out << (j ? "," : "") << format_double(data(i, j));
        out << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const linalg::SymMatrix& m) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? "," : "") << format_double(m(i, j));
        out << '\n';
    }
}

linalg::SymMatrix read_matrix_csv(std::istream& in) {
    const TextTable t = read_table(in);
    if (t.header) throw InvalidInput("matrix file must be header-free and numeric");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < t.rows.size(); ++i) rows.push_back(numeric_row(t.rows[i], i + 1));
    if (rows.empty()) throw InvalidInput("matrix file is empty");
    return linalg::SymMatrix::from_rows(rows, 1e-12);
}

linalg::SymMatrix read_matrix_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_matrix_csv(in);
}

void write_edges_tsv(std::ostream& out, const EdgeSet& edges, const linalg::SymMatrix& values) {
    if (values.dim() != edges.p()) throw InvalidInput("write_edges_tsv: value matrix dimension does not match p");
    out << "j\tj'\tvalue\n";
    for (const auto& e : edges.edges()) {
        out << e.first + 1 << '\t' << e.second + 1 << '\t' << format_double(values(e.first, e.second)) << '\n';
    }
}

EdgeSet read_edges_tsv(std::istream& in, std::size_t p) {
    const TextTable t = read_table(in, true);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        double a = 0.0;
        double b = 0.0;
        if (r.size() < 2 || !parse_double(r[0], a) || !parse_double(r[1], b) || a < 1 || b < 1 ||
            a != std::floor(a) || b != std::floor(b)) {
            throw InvalidInput("edge file row " + std::to_string(i + 1) + ": expected two 1-based node indices");
        }
        auto j = static_cast<std::size_t>(a) - 1;
        auto k = static_cast<std::size_t>(b) - 1;
        if (j > k) std::swap(j, k);
        edges.push_back({j, k});
    }
    return EdgeSet(p, std::move(edges));
}

EdgeSet read_edges_tsv_file(const std::string& path, std::size_t p) {
    auto in = open_input(path);
    return read_edges_tsv(in, p);
}

void write_partition_tsv(std::ostream& out, const Partition& part) {
    out << "node\tcomponent\n";
    for (std::size_t i = 0; i < part.p(); ++i) out << i + 1 << '\t' << part.component_id()[i] << '\n';
}

Partition read_partition_tsv(std::istream& in) {
    const TextTable t = read_table(in, true);
    std::vector<std::size_t> ids(t.rows.size(), 0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        double node = 0.0;
        double comp = 0.0;
        if (t.rows[i].size() < 2 || !parse_double(t.rows[i][0], node) || !parse_double(t.rows[i][1], comp) ||
            node < 1 || node > static_cast<double>(ids.size()) || comp < 1) {
            throw InvalidInput("partition file row " + std::to_string(i + 1) + " is malformed");
        }
        ids[static_cast<std::size_t>(node) - 1] = static_cast<std::size_t>(comp);
    }
    return Partition(std::move(ids));
}

nlohmann::json to_json(const sim::SimConfig& cfg) {
    return {{"scenario", sim::to_string(cfg.scenario)},
            {"n", cfg.n},
            {"p", cfg.p},
            {"base", sim::to_string(cfg.base)},
            {"theta", cfg.theta},
            {"transform", sim::to_string(cfg.transform)},
            {"seed", cfg.seed}};
}

sim::SimConfig sim_config_from_json(const nlohmann::json& j, sim::SimConfig cfg) {
    if (!j.is_object()) throw InvalidInput("SimConfig JSON must be an object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "scenario") cfg.scenario = sim::parse_scenario(value.get<std::string>());
            else if (key == "n") cfg.n = value.get<std::size_t>();
            else if (key == "p") cfg.p = value.get<std::size_t>();
            else if (key == "base") cfg.base = sim::parse_base(value.get<std::string>());
            else if (key == "theta") cfg.theta = value.get<double>();
            else if (key == "transform") cfg.transform = sim::parse_transform(value.get<std::string>());
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else throw InvalidInput("SimConfig JSON: unknown key '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput("SimConfig JSON: bad value for '" + key + "': " + e.what());
        }
    }
    return cfg;
}

nlohmann::json to_json(const diag::AssumptionReport& r) {
    return {{"params",
             {{"n", r.params.n},
              {"C1", r.params.c1},
              {"kappa", r.params.kappa},
              {"xi", r.params.xi},
              {"C2", r.params.c2},
              {"alpha", r.params.alpha},
              {"small_ratio", r.params.small_ratio}}},
            {"min_edge_corr", number_or_null(r.min_edge_corr)},
            {"max_nonedge_corr", r.max_nonedge_corr},
            {"lambda_min", r.lambda_min},
            {"lambda_max", r.lambda_max},
            {"beta", r.beta},
            {"nu", r.nu},
            {"min_scaled_precision", number_or_null(r.min_scaled_precision)},
            {"assumption1", {{"bound", r.min_corr_bound}, {"holds", r.min_corr_holds}}},
            {"assumption2", {{"bound", r.eigen_bound}, {"holds", r.eigen_holds}}},
            {"assumption3",
             {{"surrogate", r.nonedge_surrogate},
              {"cutoff", r.params.small_ratio},
              {"small", r.nonedge_small},
              {"heuristic", true}}}};
}

nlohmann::json to_json(const diag::Proposition1Report& r) {
    return {{"beta", r.beta},
            {"lambda_max", r.lambda_max},
            {"nu", r.nu},
            {"beta_bound", number_or_null(r.beta_bound)},
            {"beta_above_one", r.beta_above_one},
            {"beta_within_bound", r.beta_within_bound},
            {"beta_condition", r.beta_condition},
            {"min_scaled_precision", number_or_null(r.min_scaled_precision)},
            {"scaled_precision_bound", r.scaled_precision_bound},
            {"scaled_precision_condition", r.scaled_precision_condition},
            {"converse_bound", r.converse_bound},
            {"sample_size_bound", r.sample_size_bound},
            {"sample_size_condition", r.sample_size_condition},
            {"implies_assumption1", r.implies_min_corr},
            {"notes", r.notes}};
}

nlohmann::json to_json(const bench::ConfusionMetrics& m) {
    return {{"tp", m.tp},   {"fp", m.fp},   {"tn", m.tn},
            {"fn", m.fn},   {"fpr", m.fpr}, {"fnr", m.fnr},
            {"edge_count", m.edge_count}};
}

nlohmann::json to_json(const bench::MetricMeans& m) {
    return {{"tp", m.tp},   {"fp", m.fp},   {"tn", m.tn},
            {"fn", m.fn},   {"fpr", m.fpr}, {"fnr", m.fnr},
            {"edge_count", m.edge_count}};
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace tgrass::io
