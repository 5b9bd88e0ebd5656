#ifndef MIXEDGRAD_TYPES_HPP
#define MIXEDGRAD_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mixedgrad {

using Vector = Eigen::VectorXd;
// Row-major so that per-example access (one row) is contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

/// Raised when an iterate or gradient stops being finite.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace mixedgrad

#endif
