#ifndef OMNI_ERRORS_HPP
#define OMNI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace omni {

// Invalid configuration or usage (CLI exit code 1).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unusable input data: bad files, mismatched dimensions (CLI exit code 2).
struct data_error : std::runtime_error {
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical validity violated: band limits, degenerate operands (CLI exit code 3).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace omni

#endif
