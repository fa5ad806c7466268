#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tgrass/rankcorr.hpp"

namespace tgrass::prices {

/// Daily closing prices: T dates by p tickers, all strictly positive.
struct PriceTable {
    std::vector<std::string> dates;
    std::vector<std::string> tickers;
    /// prices[t][j]
    std::vector<std::vector<double>> prices;
    std::optional<std::vector<std::string>> sectors;

    void validate() const;
};

/// CSV/TSV with a header row: first column is the date, one column per ticker.
/// Empty or non-numeric cells are errors that name the cell; no imputation.
PriceTable read_price_table(std::istream& in);
PriceTable read_price_table_file(const std::string& path);

/// Two-column (ticker, sector) file with a header row; every ticker must be covered.
void attach_sectors(PriceTable& table, std::istream& sector_file);

/// Raw (T-1) x p log returns log(S_{t+1} / S_t), unstandardized.
DataMatrix log_returns(const PriceTable& table);

/// Centers each column and scales it to unit sample sd (divisor rows - 1).
DataMatrix standardize_columns(const DataMatrix& data);

/// log_returns followed by standardize_columns, with ticker labels.
DataMatrix ingest(const PriceTable& table);

}  // namespace tgrass::prices
