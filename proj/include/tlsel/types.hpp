#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace tlsel {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = Eigen::VectorXi;

// Malformed or inconsistent input data, as opposed to a bad configuration
// value (std::invalid_argument covers those).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tlsel
