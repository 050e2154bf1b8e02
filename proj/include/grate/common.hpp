#pragma once

#include <stdexcept>
#include <string>

namespace grate {

/// Bad or inconsistent input data (malformed files, undefined metrics, ...).
/// CLI maps this to exit status 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure during optimization (divergence, non-finite loss).
/// CLI maps this to exit status 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace grate
