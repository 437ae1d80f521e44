#pragma once

#include <stdexcept>
#include <string>

namespace qocd {

/// Raised when input data violates a contract (bad file, unknown node,
/// mismatched universes). The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qocd
