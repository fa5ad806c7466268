#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgrass/diagnostics.hpp"
#include "tgrass/evalbench.hpp"
#include "tgrass/linalg.hpp"
#include "tgrass/rankcorr.hpp"
#include "tgrass/screening.hpp"
#include "tgrass/simgen.hpp"

namespace tgrass::io {

/// 17 significant digits, so values read back bit-exact; negative zero is written as 0.
std::string format_double(double v);

/// A delimited text table: optional header row plus string cells.
struct TextTable {
    std::optional<std::vector<std::string>> header;
    std::vector<std::vector<std::string>> rows;
    char delimiter = ',';
};

/// Delimiter (tab or comma) is detected from the first line. The first row is
/// treated as a header when any of its fields is not a number, or always when
/// force_header is set.
TextTable read_table(std::istream& in, bool force_header = false);
TextTable read_table_file(const std::string& path, bool force_header = false);

bool parse_double(const std::string& s, double& out);

DataMatrix read_data_csv(std::istream& in);
DataMatrix read_data_csv_file(const std::string& path);
void write_data_csv(std::ostream& out, const DataMatrix& data);

/// Dense, header-free.
void write_matrix_csv(std::ostream& out, const linalg::SymMatrix& m);
linalg::SymMatrix read_matrix_csv(std::istream& in);
linalg::SymMatrix read_matrix_csv_file(const std::string& path);

/// Header "j\tj'\tvalue", 1-based indices; value is values(j, j').
void write_edges_tsv(std::ostream& out, const EdgeSet& edges, const linalg::SymMatrix& values);
EdgeSet read_edges_tsv(std::istream& in, std::size_t p);
EdgeSet read_edges_tsv_file(const std::string& path, std::size_t p);

/// Header "node\tcomponent", 1-based.
void write_partition_tsv(std::ostream& out, const Partition& part);
Partition read_partition_tsv(std::istream& in);

nlohmann::json to_json(const sim::SimConfig& cfg);
/// Rejects unknown keys; missing keys keep the values already in `base`.
sim::SimConfig sim_config_from_json(const nlohmann::json& j, sim::SimConfig base = {});

nlohmann::json to_json(const diag::AssumptionReport& r);
nlohmann::json to_json(const diag::Proposition1Report& r);
nlohmann::json to_json(const bench::ConfusionMetrics& m);
nlohmann::json to_json(const bench::MetricMeans& m);

/// Writes text to path, throwing std::runtime_error on failure.
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace tgrass::io
