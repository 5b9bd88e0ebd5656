#ifndef MIXEDGRAD_LOSSES_HPP
#define MIXEDGRAD_LOSSES_HPP

#include "mixedgrad/types.hpp"

#include <string_view>

namespace mixedgrad {

enum class LossKind { least_squares, logistic };

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view name);  // "ls" | "least_squares" | "logistic"

/// n examples by d features with one label per row. Labels are arbitrary
/// reals for least squares and must be exactly +-1 for logistic loss.
struct Dataset {
  Matrix features;
  Vector labels;

  Index size() const { return features.rows(); }
  Index dim() const { return features.cols(); }

  /// Throws std::invalid_argument when the dataset is empty, ragged,
  /// non-finite, or carries non +-1 labels under logistic loss.
  void validate(LossKind kind) const;
};

/// Floor applied to the smoothness constant of degenerate (all-zero) data.
inline constexpr double kSmoothnessFloor = 1e-12;

/// Uniform per-example smoothness constant: every g_i is beta-smooth.
/// least squares: 2 max_i |x_i|^2, logistic: max_i |x_i|^2 / 4.
double smoothness_constant(const Dataset& data, LossKind kind);

/// The averaged objective G(w) = (1/n) sum_i g_i(w) over a ball of radius R.
struct ProblemInstance {
  Dataset data;
  LossKind loss = LossKind::least_squares;
  double radius = 1.0;
  double smoothness = 1.0;

  Index size() const { return data.size(); }
  Index dim() const { return data.dim(); }
};

/// Validates the data and computes the smoothness constant.
ProblemInstance make_instance(Dataset data, LossKind kind, double radius);

// Both losses are functions of the margin z = <w, x_i>, so per-example
// gradients are a scalar multiple of x_i. loss_slope returns that scalar.
double loss_slope(const ProblemInstance& instance, Index i, const Vector& w);

double loss_value(const ProblemInstance& instance, Index i, const Vector& w);
Vector loss_grad(const ProblemInstance& instance, Index i, const Vector& w);

/// (1/n) sum_i g_i(w), summed left to right.
double full_objective(const ProblemInstance& instance, const Vector& w);

/// (1/n) sum_i grad g_i(w), summed left to right. Not an oracle call; the
/// counted version lives in oracle.hpp.
Vector objective_gradient(const ProblemInstance& instance, const Vector& w);

}  // namespace mixedgrad

#endif
