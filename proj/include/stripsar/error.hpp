#pragma once

#include <stdexcept>
#include <string>

namespace stripsar {

// File or byte-format problem (bad magic, truncated payload, malformed header).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: an estimator or transform cannot produce a meaningful
// result from the given data (flat spectrum, zero correlation, ...).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stripsar
