#include "mixedgrad/bench/reference.hpp"

#include "mixedgrad/geometry.hpp"

#include <cmath>
#include <string>

namespace mixedgrad::bench {

namespace {

double regularized_value(const ProblemInstance& instance, double l2, const Vector& w) {
  return full_objective(instance, w) + 0.5 * l2 * w.squaredNorm();
}

Vector regularized_grad(const ProblemInstance& instance, double l2, const Vector& w) {
  Vector g = objective_gradient(instance, w);
  g.noalias() += l2 * w;
  return g;
}

}  // namespace

double projected_gradient_residual(const ProblemInstance& instance, double l2, const Vector& w) {
  const double lipschitz = instance.smoothness + l2;
  const Vector moved = w - regularized_grad(instance, l2, w) / lipschitz;
  return (w - project_ball(moved, instance.radius)).norm();
}

ReferenceOptimum minimize_regularized(const ProblemInstance& instance, double l2,
                                      double tolerance, std::uint64_t max_iterations) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("reference tolerance must be positive");
  if (!(l2 >= 0.0)) throw std::invalid_argument("l2 weight must be nonnegative");
  const double eta = 1.0 / (instance.smoothness + l2);
  const double radius = instance.radius;

  Vector w = Vector::Zero(instance.dim());
  Vector y = w;
  double theta = 1.0;
  double value = regularized_value(instance, l2, w);
  for (std::uint64_t t = 1; t <= max_iterations; ++t) {
    Vector next = project_ball(y - eta * regularized_grad(instance, l2, y), radius);
    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    const double moved = (next - w).norm();
    const double next_value = regularized_value(instance, l2, next);
    const double decrease = std::abs(value - next_value);
    y = next + ((theta - 1.0) / theta_next) * (next - w);
    w = std::move(next);
    value = next_value;
    theta = theta_next;

    if (moved < tolerance && decrease < tolerance) {
      const double residual = projected_gradient_residual(instance, l2, w);
      if (residual <= 10.0 * tolerance) return ReferenceOptimum{w, value, residual, t};
    }
  }
  throw ReferenceError("reference solve did not certify within " +
                       std::to_string(max_iterations) + " iterations (residual " +
                       std::to_string(projected_gradient_residual(instance, l2, w)) + ")");
}

ReferenceOptimum compute_reference_optimum(const ProblemInstance& instance, double tolerance,
                                           std::uint64_t max_iterations) {
  return minimize_regularized(instance, 0.0, tolerance, max_iterations);
}

}  // namespace mixedgrad::bench
