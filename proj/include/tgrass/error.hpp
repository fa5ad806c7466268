#pragma once

#include <stdexcept>
#include <string>

namespace tgrass {

/// Bad argument value, shape, or range.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A required optional input (e.g. jackknife variances) was not supplied.
class MissingInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Matrix failed the positive-definiteness test.
class SingularMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A data column has zero variance.
class DegenerateColumn : public InvalidInput {
public:
    DegenerateColumn(const std::string& what, std::size_t column)
        : InvalidInput(what), column_(column) {}
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

}  // namespace tgrass
