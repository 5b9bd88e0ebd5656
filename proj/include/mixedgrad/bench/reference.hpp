#ifndef MIXEDGRAD_BENCH_REFERENCE_HPP
#define MIXEDGRAD_BENCH_REFERENCE_HPP

#include "mixedgrad/losses.hpp"

#include <cstdint>
#include <stdexcept>

namespace mixedgrad::bench {

/// Raised when the reference solve hits its iteration cap uncertified.
class ReferenceError : public std::runtime_error {
 public:
  explicit ReferenceError(const std::string& what) : std::runtime_error(what) {}
};

struct ReferenceOptimum {
  Vector point;
  double objective = 0.0;  // G(point) + l2/2 |point|^2
  double residual = 0.0;   // projected-gradient residual at point
  std::uint64_t iterations = 0;
};

/// |w - P_R(w - grad(w) / L)| for the objective G + l2/2 |.|^2, L = beta + l2.
/// Zero exactly at the constrained minimizer.
double projected_gradient_residual(const ProblemInstance& instance, double l2, const Vector& w);

/// Minimizes G(v) + l2/2 |v|^2 over the ball B_R with constant-step projected
/// Nesterov iterations (step 1/(beta + l2)) and uncounted gradients. Stops
/// once both |w_t - w_{t-1}| and |f(w_t) - f(w_{t-1})| fall below tolerance
/// and the projected-gradient residual is at most 10 * tolerance.
ReferenceOptimum minimize_regularized(const ProblemInstance& instance, double l2,
                                      double tolerance,
                                      std::uint64_t max_iterations = 1'000'000);

/// Certified w* and G* = min over B_R of G.
ReferenceOptimum compute_reference_optimum(const ProblemInstance& instance, double tolerance,
                                           std::uint64_t max_iterations = 1'000'000);

}  // namespace mixedgrad::bench

#endif
