#include "mixedgrad/mixed_grad.hpp"

#include <cmath>
#include <string>

namespace mixedgrad {

namespace {

constexpr double kFeasibilityTol = 1e-9;

double max_failure_prob() { return std::exp(-4.5); }

// Keeps anchors in B_R when averaging leaves them outside by rounding only.
Vector clamp_to_radius(const Vector& w, double radius) {
  const double norm = w.norm();
  if (norm <= radius) return w;
  if (norm > radius + kFeasibilityTol) {
    throw std::logic_error("anchor left the domain ball by " + std::to_string(norm - radius));
  }
  return project_ball(w, radius);
}

}  // namespace

void MixedGradConfig::validate() const {
  if (!(eta1 > 0.0) || !std::isfinite(eta1)) throw std::invalid_argument("eta1 must be positive");
  if (!(delta1 > 0.0) || !std::isfinite(delta1)) {
    throw std::invalid_argument("delta1 must be positive");
  }
  if (t1 < 1) throw std::invalid_argument("t1 must be at least 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
    throw std::invalid_argument("lambda1 must be positive");
  }
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must exceed 1");
  if (checkpoint_stride < 1) throw std::invalid_argument("checkpoint_stride must be at least 1");
}

MixedGradConfig theory_params(double beta, double radius, double failure_prob, int epochs) {
  if (!(beta > 0.0) || !(radius > 0.0)) {
    throw std::invalid_argument("theory_params: beta and R must be positive");
  }
  if (epochs < 1) throw std::invalid_argument("theory_params: m must be at least 1");
  if (!(failure_prob > 0.0) || failure_prob > max_failure_prob()) {
    throw std::invalid_argument("theory_params: failure probability must lie in (0, e^-4.5]");
  }
  MixedGradConfig c;
  c.gamma = 2.0;
  c.lambda1 = 16.0 * beta;
  c.delta1 = radius;
  c.epochs = epochs;
  c.t1 = static_cast<std::uint64_t>(
      std::ceil(300.0 * std::log(static_cast<double>(epochs) / failure_prob)));
  c.eta1 = 1.0 / (2.0 * beta * std::sqrt(3.0 * static_cast<double>(c.t1)));
  return c;
}

MixedGradConfig practical_params(double beta, double radius, int epochs, std::uint64_t t1) {
  MixedGradConfig c;
  c.gamma = 2.0;
  c.lambda1 = beta;
  c.delta1 = radius;
  c.eta1 = 1.0 / (2.0 * beta);
  c.epochs = epochs;
  c.t1 = t1;
  return c;
}

std::uint64_t next_inner_iters(std::uint64_t t, double gamma) {
  return static_cast<std::uint64_t>(std::llround(gamma * gamma * static_cast<double>(t)));
}

std::uint64_t scheduled_stochastic_calls(const MixedGradConfig& config) {
  std::uint64_t total = 0;
  std::uint64_t t = config.t1;
  for (int k = 1; k <= config.epochs; ++k) {
    total += t;
    t = next_inner_iters(t, config.gamma);
  }
  return total;
}

EpochState initial_state(const MixedGradConfig& config, Index dim) {
  EpochState s;
  s.index = 1;
  s.anchor = Vector::Zero(dim);
  s.delta = config.delta1;
  s.lambda = config.lambda1;
  s.eta = config.eta1;
  s.inner_iters = config.t1;
  return s;
}

Vector anchor_gradient(const ProblemInstance& instance, const Vector& anchor, double lambda,
                       OracleCounters& counters) {
  Vector g = full_grad(instance, anchor, counters);
  g.noalias() += lambda * anchor;
  return g;
}

Vector vr_gradient(const ProblemInstance& instance, Index i, const Vector& w,
                   const Vector& anchor, const Vector& anchor_grad) {
  if (w.size() != anchor.size() || anchor_grad.size() != anchor.size()) {
    throw std::invalid_argument("vr_gradient: dimension mismatch");
  }
  const Vector shifted = w + anchor;
  const double correction = loss_slope(instance, i, shifted) - loss_slope(instance, i, anchor);
  return anchor_grad + correction * instance.data.features.row(i).transpose();
}

Vector inner_step(const Vector& w, const Vector& vr_grad, double lambda, double eta,
                  const EpochDomain& domain) {
  if (!vr_grad.allFinite()) throw DivergenceError("non-finite stochastic gradient");
  Vector step = w - eta * (lambda * w + vr_grad);
  if (!step.allFinite()) throw DivergenceError("non-finite inner iterate");
  return project_epoch_domain(step, domain);
}

Vector run_epoch(const ProblemInstance& instance, const EpochState& state,
                 SeededSampler& sampler, OracleCounters& counters, RunTrace& trace,
                 std::uint64_t checkpoint_stride, const MixedGradHooks& hooks) {
  const Index d = instance.dim();
  if (state.anchor.size() != d || state.anchor_grad.size() != d) {
    throw std::invalid_argument("run_epoch: anchor or anchor gradient missing");
  }
  if (checkpoint_stride < 1) throw std::invalid_argument("run_epoch: stride must be positive");
  const EpochDomain domain(state.anchor, instance.radius, state.delta);

  Vector w = Vector::Zero(d);
  Vector average = Vector::Zero(d);  // mean of w^1 = 0 so far
  for (std::uint64_t t = 1; t <= state.inner_iters; ++t) {
    const Index i = sample_loss(sampler, counters, instance.size());
    const Vector g_hat = vr_gradient(instance, i, w, state.anchor, state.anchor_grad);

    if (hooks.on_inner_step) {
      InnerStepInfo info;
      info.epoch = state.index;
      info.step = t;
      info.sample = i;
      info.shifted_grad_sq = (g_hat - state.anchor_grad + state.lambda * w).squaredNorm();
      info.delta = state.delta;
      info.lambda = state.lambda;
      info.feasible = domain.contains(w, kFeasibilityTol);
      hooks.on_inner_step(info);
    }

    w = inner_step(w, g_hat, state.lambda, state.eta, domain);
    average += (w - average) / static_cast<double>(t + 1);

    if (t % checkpoint_stride == 0) {
      trace.record(state.index, t, counters, full_objective(instance, state.anchor + w),
                   status::kCheckpoint);
    }
  }
  return average;
}

EpochState shrink_schedule(const EpochState& state, double gamma, const Vector& averaged) {
  EpochState next;
  next.index = state.index + 1;
  next.anchor = state.anchor + averaged;
  next.delta = state.delta / gamma;
  next.lambda = state.lambda / gamma;
  next.eta = state.eta / gamma;
  next.inner_iters = next_inner_iters(state.inner_iters, gamma);
  return next;
}

Vector run_mixed_grad_into(const ProblemInstance& instance, const MixedGradConfig& config,
                           std::uint64_t seed, OracleCounters& counters, RunTrace& trace,
                           const MixedGradHooks& hooks) {
  config.validate();
  SeededSampler sampler(seed);
  const double beta = instance.smoothness;

  EpochState state = initial_state(config, instance.dim());
  for (int k = 1; k <= config.epochs; ++k) {
    if (config.step_from_inner_iters) {
      state.eta = 1.0 / (2.0 * beta * std::sqrt(3.0 * static_cast<double>(state.inner_iters)));
    }
    state.anchor_grad = anchor_gradient(instance, state.anchor, state.lambda, counters);
    const Vector averaged =
        run_epoch(instance, state, sampler, counters, trace, config.checkpoint_stride, hooks);
    EpochState next = shrink_schedule(state, config.gamma, averaged);
    next.anchor = clamp_to_radius(next.anchor, instance.radius);
    trace.record(k, state.inner_iters, counters, full_objective(instance, next.anchor),
                 status::kEpochEnd);
    if (hooks.on_epoch_end) hooks.on_epoch_end(state, next.anchor);
    state = std::move(next);
  }
  return state.anchor;
}

MixedGradResult run_mixed_grad(const ProblemInstance& instance, const MixedGradConfig& config,
                               std::uint64_t seed, std::optional<double> reference_objective,
                               const MixedGradHooks& hooks) {
  MixedGradResult result;
  result.trace.solver = "mixedgrad";
  result.trace.seed = seed;
  result.trace.reference_objective = reference_objective;
  result.point = run_mixed_grad_into(instance, config, seed, result.counters, result.trace, hooks);
  return result;
}

}  // namespace mixedgrad
