#ifndef MIXEDGRAD_MIXED_GRAD_HPP
#define MIXEDGRAD_MIXED_GRAD_HPP

#include "mixedgrad/geometry.hpp"
#include "mixedgrad/losses.hpp"
#include "mixedgrad/oracle.hpp"
#include "mixedgrad/trace.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace mixedgrad {

/// Inputs of the epoch scheme. Epoch k uses
///   delta_k = delta1 / gamma^(k-1), lambda_k = lambda1 / gamma^(k-1),
///   eta_k = eta1 / gamma^(k-1),     T_k = T1 * gamma^(2(k-1)).
struct MixedGradConfig {
  double eta1 = 0.0;
  double delta1 = 0.0;
  std::uint64_t t1 = 0;
  int epochs = 0;
  double lambda1 = 0.0;
  double gamma = 2.0;
  std::uint64_t checkpoint_stride = 1000;
  // When set, eta_k = 1 / (2 beta sqrt(3 T_k)) each epoch instead of the
  // eta1 / gamma^(k-1) shrink. Identical for gamma = 2 up to rounding.
  bool step_from_inner_iters = false;

  void validate() const;
};

/// Theory-mode parameters: gamma = 2, lambda1 = 16 beta, delta1 = R,
/// T1 = ceil(300 ln(m / delta)), eta1 = 1 / (2 beta sqrt(3 T1)).
/// Rejects failure probabilities outside (0, e^-4.5].
MixedGradConfig theory_params(double beta, double radius, double failure_prob, int epochs);

/// Practical-mode defaults keeping the schedule shapes:
/// gamma = 2, lambda1 = beta, delta1 = R, eta1 = 1 / (2 beta).
MixedGradConfig practical_params(double beta, double radius, int epochs, std::uint64_t t1);

/// T_{k+1} = round(gamma^2 T_k).
std::uint64_t next_inner_iters(std::uint64_t t, double gamma);

/// Sum of T_k over all epochs, following next_inner_iters.
std::uint64_t scheduled_stochastic_calls(const MixedGradConfig& config);

struct EpochState {
  int index = 1;
  Vector anchor;       // running solution before this epoch
  double delta = 0.0;  // inner radius of the epoch domain
  double lambda = 0.0;
  double eta = 0.0;
  std::uint64_t inner_iters = 0;
  Vector anchor_grad;  // lambda * anchor + grad G(anchor); empty until computed
};

EpochState initial_state(const MixedGradConfig& config, Index dim);

/// Per-step diagnostics. shifted_grad_sq is |grad g^_i(w_t) + lambda w_t|^2
/// where grad g^_i(w) = grad g_i(w + anchor) - grad g_i(anchor).
struct InnerStepInfo {
  int epoch = 0;
  std::uint64_t step = 0;
  Index sample = 0;
  double shifted_grad_sq = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  bool feasible = true;  // iterate lies in the epoch domain within 1e-9
};

struct MixedGradHooks {
  std::function<void(const InnerStepInfo&)> on_inner_step;
  /// Called after each epoch with the finished state and the next anchor.
  std::function<void(const EpochState&, const Vector&)> on_epoch_end;
};

/// g = lambda * anchor + grad G(anchor); one full-oracle call.
Vector anchor_gradient(const ProblemInstance& instance, const Vector& anchor, double lambda,
                       OracleCounters& counters);

/// g + grad g_i(w + anchor) - grad g_i(anchor). Does not count an oracle call;
/// the stochastic call is counted when i is sampled. Exactly g at w = 0.
Vector vr_gradient(const ProblemInstance& instance, Index i, const Vector& w,
                   const Vector& anchor, const Vector& anchor_grad);

/// Projected step w - eta (lambda w + g) onto the epoch domain.
/// Throws DivergenceError on a non-finite gradient or step.
Vector inner_step(const Vector& w, const Vector& vr_grad, double lambda, double eta,
                  const EpochDomain& domain);

/// One epoch of sampled inner steps from w = 0. Returns the running mean of
/// the T_k + 1 iterates w^1 ... w^(T_k + 1), which lies in the epoch domain.
/// state.anchor_grad must already hold the anchor gradient.
Vector run_epoch(const ProblemInstance& instance, const EpochState& state,
                 SeededSampler& sampler, OracleCounters& counters, RunTrace& trace,
                 std::uint64_t checkpoint_stride, const MixedGradHooks& hooks = {});

/// Moves the anchor by the epoch average, divides delta, lambda, eta by gamma,
/// multiplies T by gamma^2 and clears the anchor gradient.
EpochState shrink_schedule(const EpochState& state, double gamma, const Vector& averaged);

struct MixedGradResult {
  Vector point;
  RunTrace trace;
  OracleCounters counters;
};

/// Full run into caller-owned counters and trace. A partial trace survives a
/// DivergenceError. Each epoch appends an `epoch_end` record for G(anchor).
Vector run_mixed_grad_into(const ProblemInstance& instance, const MixedGradConfig& config,
                           std::uint64_t seed, OracleCounters& counters, RunTrace& trace,
                           const MixedGradHooks& hooks = {});

MixedGradResult run_mixed_grad(const ProblemInstance& instance, const MixedGradConfig& config,
                               std::uint64_t seed,
                               std::optional<double> reference_objective = std::nullopt,
                               const MixedGradHooks& hooks = {});

}  // namespace mixedgrad

#endif
