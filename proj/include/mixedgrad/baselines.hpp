#ifndef MIXEDGRAD_BASELINES_HPP
#define MIXEDGRAD_BASELINES_HPP

#include "mixedgrad/losses.hpp"
#include "mixedgrad/oracle.hpp"
#include "mixedgrad/trace.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mixedgrad {

enum class BaselineMethod { sgd, gd, nag };
enum class StepRule { constant, inv_sqrt_t };

std::string_view to_string(BaselineMethod method);

/// Step sizes: SGD uses eta_t = scale / sqrt(t) (inv_sqrt_t) or eta = scale
/// (constant); GD and NAG use eta = scale / beta, so scale = 1 is eta = 1/beta.
struct BaselineConfig {
  BaselineMethod method = BaselineMethod::gd;
  std::uint64_t iterations = 1;
  StepRule step_rule = StepRule::constant;
  double step_scale = 1.0;
  bool averaging = false;  // SGD only: report the uniform iterate average
  // Iterations (1-based) at which to record the objective. When empty every
  // checkpoint_stride-th iteration is recorded. The last iteration is always recorded.
  std::vector<std::uint64_t> checkpoints;
  std::uint64_t checkpoint_stride = 1;

  void validate() const;
};

/// SGD defaults: c = R sqrt(n) / beta with 1/sqrt(t) steps and averaging.
BaselineConfig sgd_defaults(const ProblemInstance& instance, std::uint64_t iterations);
BaselineConfig gd_defaults(std::uint64_t iterations);
BaselineConfig nag_defaults(std::uint64_t iterations);

/// About `count` distinct integers spread geometrically over [first, last].
std::vector<std::uint64_t> log_spaced_checkpoints(std::uint64_t first, std::uint64_t last,
                                                  int count);

// Each solver starts from w_0 = 0, writes checkpoints into `trace` and
// returns the reported point. A DivergenceError leaves the partial trace.

/// w_{t+1} = P_R(w_t - eta_t grad g_{i_t}(w_t)); touches stochastic calls only.
Vector run_sgd(const ProblemInstance& instance, const BaselineConfig& config,
               std::uint64_t seed, OracleCounters& counters, RunTrace& trace);

/// w_{t+1} = P_R(w_t - eta grad G(w_t)); touches full calls only.
Vector run_gd(const ProblemInstance& instance, const BaselineConfig& config,
              OracleCounters& counters, RunTrace& trace);

/// Constant-step Nesterov scheme:
///   w_t     = P_R(y_t - eta grad G(y_t))
///   th_{t+1} = (1 + sqrt(1 + 4 th_t^2)) / 2,  th_1 = 1
///   y_{t+1} = w_t + ((th_t - 1) / th_{t+1}) (w_t - w_{t-1}),  y_1 = w_0.
Vector run_nag(const ProblemInstance& instance, const BaselineConfig& config,
               OracleCounters& counters, RunTrace& trace);

struct BaselineResult {
  Vector point;
  RunTrace trace;
};

/// Dispatches on config.method with a fresh trace.
BaselineResult run_baseline(const ProblemInstance& instance, const BaselineConfig& config,
                            std::uint64_t seed, OracleCounters& counters,
                            std::optional<double> reference_objective = std::nullopt);

}  // namespace mixedgrad

#endif
