#include "tgrass/prices.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "tgrass/error.hpp"
#include "tgrass/io.hpp"

namespace tgrass::prices {

void PriceTable::validate() const {
    if (dates.size() < 2) throw InvalidInput("price table: need at least 2 dates");
    if (tickers.empty()) throw InvalidInput("price table: no ticker columns");
    if (prices.size() != dates.size()) throw InvalidInput("price table: row count does not match dates");
    if (sectors && sectors->size() != tickers.size()) throw InvalidInput("price table: sector count mismatch");
    for (std::size_t t = 0; t < prices.size(); ++t) {
        if (prices[t].size() != tickers.size()) throw InvalidInput("price table: ragged row " + dates[t]);
        for (std::size_t j = 0; j < tickers.size(); ++j) {
            if (!(prices[t][j] > 0.0) || !std::isfinite(prices[t][j])) {
                throw InvalidInput("price table: price for " + tickers[j] + " on " + dates[t] +
                                   " must be positive");
            }
        }
    }
}

PriceTable read_price_table(std::istream& in) {
    const io::TextTable t = io::read_table(in, true);
    if (!t.header || t.header->size() < 2) throw InvalidInput("price table: header needs a date column and tickers");
    PriceTable table;
    table.tickers.assign(t.header->begin() + 1, t.header->end());
    for (const auto& row : t.rows) {
        table.dates.push_back(row[0]);
        std::vector<double> values(row.size() - 1);
        for (std::size_t j = 1; j < row.size(); ++j) {
            const std::string& cell = row[j];
            const std::string where = "price table: " + table.tickers[j - 1] + " on " + row[0];
            if (cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan") {
                throw InvalidInput(where + " is missing");
            }
            if (!io::parse_double(cell, values[j - 1])) throw InvalidInput(where + " is not a number: '" + cell + "'");
        }
        table.prices.push_back(std::move(values));
    }
    table.validate();
    return table;
}

PriceTable read_price_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_price_table(in);
}

void attach_sectors(PriceTable& table, std::istream& sector_file) {
    const io::TextTable t = io::read_table(sector_file, true);
    std::map<std::string, std::string> lookup;
    for (const auto& row : t.rows) {
        if (row.size() < 2) throw InvalidInput("sector file: each row needs ticker and sector");
        lookup[row[0]] = row[1];
    }
    std::vector<std::string> sectors;
    for (const auto& ticker : table.tickers) {
        const auto it = lookup.find(ticker);
        if (it == lookup.end()) throw InvalidInput("sector file: no sector for ticker " + ticker);
        sectors.push_back(it->second);
    }
    table.sectors = std::move(sectors);
}

DataMatrix log_returns(const PriceTable& table) {
    table.validate();
    const std::size_t rows = table.dates.size() - 1;
    const std::size_t p = table.tickers.size();
    if (rows < 2) throw InvalidInput("price table: need at least 3 dates to form 2 returns");
    std::vector<double> values(rows * p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t t = 0; t < rows; ++t) values[j * rows + t] = std::log(table.prices[t + 1][j] / table.prices[t][j]);
    }
    return DataMatrix(rows, p, std::move(values), table.tickers);
}

DataMatrix standardize_columns(const DataMatrix& data) {
    const std::size_t n = data.n();
    const double nd = static_cast<double>(n);
    std::vector<double> values(n * data.p());
    for (std::size_t j = 0; j < data.p(); ++j) {
        const auto col = data.column(j);
        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= nd;
        double ss = 0.0;
        for (double v : col) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / (nd - 1.0));
        const std::string name = data.labels() ? (*data.labels())[j] : std::to_string(j + 1);
        if (!(sd > 1e-300)) throw DegenerateColumn("standardize: column " + name + " has zero variance", j);
        for (std::size_t i = 0; i < n; ++i) values[j * n + i] = (col[i] - mean) / sd;
    }
    return DataMatrix(n, data.p(), std::move(values), data.labels());
}

DataMatrix ingest(const PriceTable& table) { return standardize_columns(log_returns(table)); }

}  // namespace tgrass::prices
