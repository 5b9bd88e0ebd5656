#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixedgrad/mixed_grad.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace mixedgrad;
using testing::toy;
using testing::vec;

namespace {

EpochState make_state(const ProblemInstance& inst, const Vector& anchor, double delta,
                      double lambda, double eta, std::uint64_t iters) {
  EpochState s;
  s.anchor = anchor;
  s.delta = delta;
  s.lambda = lambda;
  s.eta = eta;
  s.inner_iters = iters;
  OracleCounters scratch;
  s.anchor_grad = anchor_gradient(inst, anchor, lambda, scratch);
  return s;
}

MixedGradConfig small_config(int epochs, std::uint64_t t1) {
  MixedGradConfig c;
  c.eta1 = 0.1;
  c.delta1 = 1.0;
  c.t1 = t1;
  c.epochs = epochs;
  c.lambda1 = 1.0;
  return c;
}

}  // namespace

TEST_CASE("anchor_gradient examples") {
  const auto inst = toy(LossKind::least_squares, {{1.0, 1.0}, {-1.0, 1.0}});
  OracleCounters c;
  const Vector g = anchor_gradient(inst, vec({1.0}), 1.0, c);
  CHECK(g[0] == 3.0);
  CHECK(c.full_calls == 1);

  // Brute-force mean of per-example gradients plus the regularizer.
  const Vector brute = vec({1.0}) + 0.5 * (loss_grad(inst, 0, vec({1.0})) +
                                           loss_grad(inst, 1, vec({1.0})));
  CHECK(brute[0] == 3.0);

  OracleCounters c2;
  const auto other = testing::random_instance(LossKind::logistic, 12, 3, 1);
  CHECK(anchor_gradient(other, Vector::Zero(3), 5.0, c2) == full_grad(other, Vector::Zero(3), c2));
  const Vector a = vec({0.1, -0.2, 0.3});
  CHECK(anchor_gradient(other, a, 0.0, c2) == full_grad(other, a, c2));
}

TEST_CASE("vr_gradient examples") {
  const auto inst = testing::random_instance(LossKind::logistic, 20, 4, 2);
  std::mt19937_64 rng(1);
  const Vector anchor = testing::random_in_ball(rng, 4, 1.0);
  OracleCounters c;
  const Vector g = anchor_gradient(inst, anchor, 0.7, c);
  for (Index i = 0; i < inst.size(); ++i) {
    CHECK(vr_gradient(inst, i, Vector::Zero(4), anchor, g) == g);
  }

  const auto one = toy(LossKind::least_squares, {{0.5, 1.0, -2.0}});
  const Vector w = vec({0.2, 0.1});
  const Vector w_bar = vec({-0.3, 0.4});
  const double lambda = 0.25;
  const Vector g1 = anchor_gradient(one, w_bar, lambda, c);
  const Vector expected = lambda * w_bar + loss_grad(one, 0, w + w_bar);
  CHECK((vr_gradient(one, 0, w, w_bar, g1) - expected).norm() <= 1e-14);
}

TEST_CASE("vr_gradient is unbiased and its correction is beta-bounded") {
  for (auto kind : {LossKind::least_squares, LossKind::logistic}) {
    const auto inst = testing::random_instance(kind, 25, 5, 13, 1.5);
    std::mt19937_64 rng(77);
    const Vector anchor = testing::random_in_ball(rng, 5, 1.0);
    const double lambda = 0.3;
    const double delta = 0.4;
    const EpochDomain domain(anchor, inst.radius, delta);
    OracleCounters c;
    const Vector g = anchor_gradient(inst, anchor, lambda, c);
    for (int trial = 0; trial < 50; ++trial) {
      const Vector w = project_epoch_domain(testing::random_in_ball(rng, 5, delta), domain);
      Vector mean = Vector::Zero(5);
      for (Index i = 0; i < inst.size(); ++i) {
        mean += vr_gradient(inst, i, w, anchor, g) + lambda * w;
        const Vector diff = loss_grad(inst, i, w + anchor) - loss_grad(inst, i, anchor);
        CHECK(diff.norm() <= inst.smoothness * w.norm() + 1e-9);
      }
      mean /= static_cast<double>(inst.size());
      const Vector target = lambda * w + lambda * anchor + full_grad(inst, w + anchor, c);
      CHECK((mean - target).norm() <= 1e-12);
    }
  }
}

TEST_CASE("inner_step examples") {
  const EpochDomain wide(Vector::Zero(2), 100.0, 100.0);
  const Vector w = vec({0.1, 0.0});
  CHECK(inner_step(w, vec({0.2, 0.0}), 0.0, 0.5, wide).norm() == 0.0);
  CHECK(inner_step(w, vec({0.7, -3.0}), 1.0, 0.0, wide) == w);
  // lambda w + g = 0
  CHECK(inner_step(w, vec({-0.2, 0.0}), 2.0, 0.3, wide) == w);

  const EpochDomain tight(Vector::Zero(2), 1.0, 0.05);
  CHECK(inner_step(w * 0.0, vec({1.0, 0.0}), 0.0, 1.0, tight).norm() ==
        doctest::Approx(0.05));

  CHECK_THROWS_AS(inner_step(w, vec({NAN, 0.0}), 0.0, 0.1, wide), DivergenceError);
  CHECK_THROWS_AS(inner_step(w, vec({1e308, 0.0}), 0.0, 1e10, wide), DivergenceError);
}

TEST_CASE("run_epoch examples") {
  const auto inst = toy(LossKind::least_squares, {{0.3, 1.0}}, 10.0);
  SeededSampler sampler(1);
  OracleCounters c;
  RunTrace trace;

  auto zero = make_state(inst, vec({0.0}), 1.0, 1.0, 0.1, 0);
  CHECK(run_epoch(inst, zero, sampler, c, trace, 1).norm() == 0.0);
  CHECK(c.stochastic_calls == 0);

  // Strong pull to the origin with a zero anchor gradient.
  const auto flat = toy(LossKind::least_squares, {{0.0, 1.0}, {0.0, -1.0}});
  auto pulled = make_state(flat, vec({0.0}), 1.0, 1e6, 1e-6, 100);
  CHECK(run_epoch(flat, pulled, sampler, c, trace, 1000).norm() <= 1e-12);
}

TEST_CASE("run_epoch on a 1-D quadratic approaches the constrained minimizer") {
  // F(w) = lambda/2 w^2 + (a - w)^2 around anchor 0; minimizer 2a / (lambda + 2).
  struct Case {
    double a, delta;
  };
  for (const Case cs : {Case{0.3, 1.0}, Case{3.0, 0.5}, Case{-2.0, 0.4}}) {
    const auto inst = toy(LossKind::least_squares, {{cs.a, 1.0}}, 10.0);
    const double lambda = 1.0;
    const double eta = 0.05;
    const double target = std::clamp(2.0 * cs.a / (lambda + 2.0), -cs.delta, cs.delta);
    auto state = make_state(inst, vec({0.0}), cs.delta, lambda, eta, 400);
    SeededSampler sampler(5);
    OracleCounters c;
    RunTrace trace;
    const Vector avg = run_epoch(inst, state, sampler, c, trace, 100);
    CHECK(std::abs(avg[0] - target) <= 10.0 * eta);
    CHECK(std::abs(avg[0] - target) <= 0.05 * std::abs(target));
    CHECK(trace.records.size() == 4);
    CHECK(c.stochastic_calls == 400);
    CHECK(c.full_calls == 0);
  }
}

TEST_CASE("shrink_schedule examples") {
  EpochState s;
  s.index = 1;
  s.anchor = vec({0.2, -0.1});
  s.delta = 1.0;
  s.lambda = 4.0;
  s.eta = 0.5;
  s.inner_iters = 10;
  s.anchor_grad = vec({1.0, 1.0});
  const EpochState s2 = shrink_schedule(s, 2.0, Vector::Zero(2));
  const EpochState s3 = shrink_schedule(s2, 2.0, vec({0.1, 0.1}));
  CHECK(s2.delta == 0.5);
  CHECK(s3.delta == 0.25);
  CHECK(s2.inner_iters == 40);
  CHECK(s3.inner_iters == 160);
  CHECK(s2.lambda == 2.0);
  CHECK(s2.eta == 0.25);
  CHECK(s2.index == 2);
  CHECK(s2.anchor == s.anchor);
  CHECK(s2.anchor_grad.size() == 0);
  CHECK((s3.anchor - vec({0.3, 0.0})).norm() <= 1e-15);
  CHECK(next_inner_iters(10, 1.5) == 23);
}

TEST_CASE("theory_params formulas") {
  const double delta = std::exp(-4.5);
  const auto c = theory_params(1.0, 1.0, delta, 5);
  CHECK(c.gamma == 2.0);
  CHECK(c.lambda1 == 16.0);
  CHECK(c.delta1 == 1.0);
  CHECK(c.t1 == 1833);
  CHECK(c.eta1 == 1.0 / (2.0 * std::sqrt(3.0 * 1833.0)));
  CHECK(c.epochs == 5);
  CHECK_THROWS_AS(theory_params(1.0, 1.0, 0.1, 5), std::invalid_argument);
  CHECK_THROWS_AS(theory_params(1.0, 1.0, 0.0, 5), std::invalid_argument);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("oracle accounting over a run") {
  const auto inst = testing::random_instance(LossKind::least_squares, 30, 4, 8, 1.0);
  const auto r = run_mixed_grad(inst, small_config(3, 10), 1);
  CHECK(r.counters.stochastic_calls == 210);
  CHECK(r.counters.full_calls == 3);
  CHECK(scheduled_stochastic_calls(small_config(3, 10)) == 210);
  CHECK(r.trace.with_status(status::kEpochEnd).size() == 3);

  std::uint64_t last_s = 0;
  std::uint64_t last_f = 0;
  for (const auto& rec : r.trace.records) {
    CHECK(rec.stoch_calls >= last_s);
    CHECK(rec.full_calls >= last_f);
    last_s = rec.stoch_calls;
    last_f = rec.full_calls;
  }
}

TEST_CASE("same seed reproduces the run") {
  const auto inst = testing::random_instance(LossKind::logistic, 30, 4, 8, 1.0);
  const auto a = run_mixed_grad(inst, small_config(3, 20), 7);
  const auto b = run_mixed_grad(inst, small_config(3, 20), 7);
  CHECK(a.point == b.point);
  CHECK(a.trace.records == b.trace.records);
}

TEST_CASE("zero-gradient instance stays at the origin") {
  const auto inst = toy(LossKind::least_squares, {{0.0, 1.0, 2.0}, {0.0, -1.0, 0.5}}, 1.0);
  const auto r = run_mixed_grad(inst, small_config(4, 10), 3);
  CHECK(r.point.norm() == 0.0);
}

TEST_CASE("deterministic 1-D quadratic: error decays over epochs") {
  // n = 1 gives exact gradients; G(w) = (0.5 - w)^2 has its minimum 0 inside B_1.
  const auto inst = toy(LossKind::least_squares, {{0.5, 1.0}}, 1.0);
  const MixedGradConfig c = practical_params(inst.smoothness, 1.0, 6, 10);
  const auto r = run_mixed_grad(inst, c, 2, 0.0);
  const auto ends = r.trace.with_status(status::kEpochEnd);
  REQUIRE(ends.size() == 6);
  for (std::size_t k = 1; k < ends.size(); ++k) CHECK(ends[k].error < ends[k - 1].error);
  // Epoch k minimizes lambda_k/2 w^2 + G(w), whose minimizer is 1 / (lambda_k + 2).
  CHECK(std::abs(r.point[0] - 1.0 / (2.0 / 32.0 + 2.0)) <= 1e-3);
}

TEST_CASE("iterates and anchors stay feasible") {
  const auto inst = testing::random_instance(LossKind::least_squares, 40, 5, 31, 0.5);
  MixedGradConfig c = practical_params(inst.smoothness, inst.radius, 4, 20);
  std::size_t infeasible = 0;
  std::size_t steps = 0;
  double worst_anchor = 0.0;
  MixedGradHooks hooks;
  hooks.on_inner_step = [&](const InnerStepInfo& info) {
    ++steps;
    if (!info.feasible) ++infeasible;
  };
  hooks.on_epoch_end = [&](const EpochState&, const Vector& next) {
    worst_anchor = std::max(worst_anchor, next.norm() - inst.radius);
  };
  run_mixed_grad(inst, c, 4, std::nullopt, hooks);
  CHECK(steps == scheduled_stochastic_calls(c));
  CHECK(infeasible == 0);
  CHECK(worst_anchor <= 1e-9);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(small_config(0, 10).validate(), std::invalid_argument);
  CHECK_THROWS_AS(small_config(2, 0).validate(), std::invalid_argument);
  auto c = small_config(2, 10);
  c.gamma = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config(2, 10);
  c.eta1 = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
