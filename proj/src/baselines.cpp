#include "mixedgrad/baselines.hpp"

#include "mixedgrad/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace mixedgrad {

namespace {

class CheckpointCursor {
 public:
  explicit CheckpointCursor(const BaselineConfig& config) : config_(config) {}

  bool due(std::uint64_t t) {
    if (t == config_.iterations) return true;
    if (config_.checkpoints.empty()) return t % config_.checkpoint_stride == 0;
    while (next_ < config_.checkpoints.size() && config_.checkpoints[next_] < t) ++next_;
    return next_ < config_.checkpoints.size() && config_.checkpoints[next_] == t;
  }

 private:
  const BaselineConfig& config_;
  std::size_t next_ = 0;
};

void require_finite(const Vector& w, const char* solver) {
  if (!w.allFinite()) throw DivergenceError(std::string(solver) + ": non-finite iterate");
}

}  // namespace

std::string_view to_string(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::sgd:
      return "sgd";
    case BaselineMethod::gd:
      return "gd";
    case BaselineMethod::nag:
      return "nag";
  }
  return "unknown";
}

void BaselineConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("baseline iterations must be at least 1");
  if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
    throw std::invalid_argument("baseline step scale must be positive");
  }
  if (checkpoint_stride < 1) throw std::invalid_argument("checkpoint stride must be positive");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw std::invalid_argument("checkpoints must be sorted");
  }
}

BaselineConfig sgd_defaults(const ProblemInstance& instance, std::uint64_t iterations) {
  BaselineConfig c;
  c.method = BaselineMethod::sgd;
  c.iterations = iterations;
  c.step_rule = StepRule::inv_sqrt_t;
  c.step_scale = instance.radius * std::sqrt(static_cast<double>(instance.size())) /
                 instance.smoothness;
  c.averaging = true;
  return c;
}

BaselineConfig gd_defaults(std::uint64_t iterations) {
  BaselineConfig c;
  c.method = BaselineMethod::gd;
  c.iterations = iterations;
  return c;
}

BaselineConfig nag_defaults(std::uint64_t iterations) {
  BaselineConfig c;
  c.method = BaselineMethod::nag;
  c.iterations = iterations;
  return c;
}

std::vector<std::uint64_t> log_spaced_checkpoints(std::uint64_t first, std::uint64_t last,
                                                  int count) {
  if (first < 1 || last < first || count < 1) {
    throw std::invalid_argument("log_spaced_checkpoints: need 1 <= first <= last, count >= 1");
  }
  std::vector<std::uint64_t> out;
  const double lo = std::log(static_cast<double>(first));
  const double hi = std::log(static_cast<double>(last));
  for (int j = 0; j < count; ++j) {
    const double frac = count == 1 ? 1.0 : static_cast<double>(j) / (count - 1);
    auto t = static_cast<std::uint64_t>(std::llround(std::exp(lo + frac * (hi - lo))));
    t = std::clamp(t, first, last);
    if (out.empty() || out.back() != t) out.push_back(t);
  }
  return out;
}

Vector run_sgd(const ProblemInstance& instance, const BaselineConfig& config,
               std::uint64_t seed, OracleCounters& counters, RunTrace& trace) {
  config.validate();
  if (config.method != BaselineMethod::sgd) throw std::invalid_argument("run_sgd: method != sgd");
  SeededSampler sampler(seed);
  CheckpointCursor cursor(config);
  const double radius = instance.radius;

  Vector w = Vector::Zero(instance.dim());
  Vector average = Vector::Zero(instance.dim());
  for (std::uint64_t t = 1; t <= config.iterations; ++t) {
    const Index i = sample_loss(sampler, counters, instance.size());
    const double eta = config.step_rule == StepRule::inv_sqrt_t
                           ? config.step_scale / std::sqrt(static_cast<double>(t))
                           : config.step_scale;
    Vector step = w - eta * loss_grad(instance, i, w);
    require_finite(step, "sgd");
    w = project_ball(step, radius);
    average += (w - average) / static_cast<double>(t);
    if (cursor.due(t)) {
      trace.record(0, t, counters, full_objective(instance, config.averaging ? average : w),
                   status::kCheckpoint);
    }
  }
  return config.averaging ? average : w;
}

Vector run_gd(const ProblemInstance& instance, const BaselineConfig& config,
              OracleCounters& counters, RunTrace& trace) {
  config.validate();
  if (config.method != BaselineMethod::gd) throw std::invalid_argument("run_gd: method != gd");
  CheckpointCursor cursor(config);
  const double eta = config.step_scale / instance.smoothness;

  Vector w = Vector::Zero(instance.dim());
  for (std::uint64_t t = 1; t <= config.iterations; ++t) {
    Vector step = w - eta * full_grad(instance, w, counters);
    require_finite(step, "gd");
    w = project_ball(step, instance.radius);
    if (cursor.due(t)) {
      trace.record(0, t, counters, full_objective(instance, w), status::kCheckpoint);
    }
  }
  return w;
}

Vector run_nag(const ProblemInstance& instance, const BaselineConfig& config,
               OracleCounters& counters, RunTrace& trace) {
  config.validate();
  if (config.method != BaselineMethod::nag) throw std::invalid_argument("run_nag: method != nag");
  CheckpointCursor cursor(config);
  const double eta = config.step_scale / instance.smoothness;

  Vector w = Vector::Zero(instance.dim());
  Vector y = w;
  double theta = 1.0;
  for (std::uint64_t t = 1; t <= config.iterations; ++t) {
    Vector step = y - eta * full_grad(instance, y, counters);
    require_finite(step, "nag");
    Vector next = project_ball(step, instance.radius);
    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    y = next + ((theta - 1.0) / theta_next) * (next - w);
    w = std::move(next);
    theta = theta_next;
    if (cursor.due(t)) {
      trace.record(0, t, counters, full_objective(instance, w), status::kCheckpoint);
    }
  }
  return w;
}

BaselineResult run_baseline(const ProblemInstance& instance, const BaselineConfig& config,
                            std::uint64_t seed, OracleCounters& counters,
                            std::optional<double> reference_objective) {
  BaselineResult result;
  result.trace.solver = std::string(to_string(config.method));
  result.trace.seed = seed;
  result.trace.reference_objective = reference_objective;
  switch (config.method) {
    case BaselineMethod::sgd:
      result.point = run_sgd(instance, config, seed, counters, result.trace);
      break;
    case BaselineMethod::gd:
      result.point = run_gd(instance, config, counters, result.trace);
      break;
    case BaselineMethod::nag:
      result.point = run_nag(instance, config, counters, result.trace);
      break;
  }
  return result;
}

}  // namespace mixedgrad
