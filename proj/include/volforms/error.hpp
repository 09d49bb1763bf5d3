#pragma once

#include <stdexcept>
#include <string>

namespace volforms {

/// Error raised for invalid inputs or domain violations (grid mismatch,
/// off-grid atoms, singular matrices, non-convergent quadrature, ...).
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace volforms
