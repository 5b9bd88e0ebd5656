#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixedgrad/losses.hpp"
#include "test_support.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace mixedgrad;
using testing::toy;
using testing::vec;

namespace {

// Central differences of loss_value, coordinate by coordinate.
Vector central_difference(const ProblemInstance& inst, Index i, const Vector& w, double h) {
  Vector g(w.size());
  for (Index j = 0; j < w.size(); ++j) {
    Vector plus = w;
    Vector minus = w;
    plus[j] += h;
    minus[j] -= h;
    g[j] = (loss_value(inst, i, plus) - loss_value(inst, i, minus)) / (2.0 * h);
  }
  return g;
}

// Largest eigenvalue of a symmetric PSD matrix by power iteration.
double power_iteration(const Eigen::MatrixXd& a) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows());
  double lambda = 0.0;
  for (int k = 0; k < 500; ++k) {
    Eigen::VectorXd next = a * v;
    lambda = next.norm();
    if (lambda == 0.0) return 0.0;
    v = next / lambda;
  }
  return lambda;
}

}  // namespace

TEST_CASE("loss_value on hand examples") {
  const auto ls = toy(LossKind::least_squares, {{1.0, 1.0, 0.0}});
  CHECK(loss_value(ls, 0, vec({0.0, 0.0})) == 1.0);

  const auto ls2 = toy(LossKind::least_squares, {{3.0, 2.0, 1.0}});
  CHECK(loss_value(ls2, 0, vec({1.0, 1.0})) == 0.0);

  const auto lg = toy(LossKind::logistic, {{1.0, 0.3, -2.0}});
  CHECK(loss_value(lg, 0, vec({0.0, 0.0})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("loss_grad on hand examples") {
  const auto ls = toy(LossKind::least_squares, {{1.0, 1.0, 0.0}});
  const Vector g = loss_grad(ls, 0, vec({0.0, 0.0}));
  CHECK(g[0] == -2.0);
  CHECK(g[1] == 0.0);

  const auto lg = toy(LossKind::logistic, {{1.0, 1.0, 2.0}});
  const Vector h = loss_grad(lg, 0, vec({0.0, 0.0}));
  CHECK(h[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(h[1] == doctest::Approx(-1.0).epsilon(1e-15));

  // Interior minimizer of a least-squares term: <w, x> = y.
  const auto fit = toy(LossKind::least_squares, {{3.0, 2.0, 1.0}});
  CHECK(loss_grad(fit, 0, vec({1.0, 1.0})).norm() == 0.0);
}

TEST_CASE("logistic loss stays finite for huge margins") {
  const auto lg = toy(LossKind::logistic, {{-1.0, 1.0}});
  const double big = loss_value(lg, 0, vec({800.0}));
  CHECK(std::isfinite(big));
  CHECK(big == doctest::Approx(800.0));
  CHECK(loss_value(lg, 0, vec({-800.0})) >= 0.0);
  CHECK(loss_grad(lg, 0, vec({800.0})).allFinite());
  CHECK(loss_grad(lg, 0, vec({-800.0})).allFinite());
}

TEST_CASE("full_objective averages in order") {
  const auto one = toy(LossKind::least_squares, {{2.0, 1.0, 1.0}});
  const Vector w = vec({0.25, -0.5});
  CHECK(full_objective(one, w) == loss_value(one, 0, w));

  const auto twins = toy(LossKind::logistic, {{1.0, 0.5, 2.0}, {1.0, 0.5, 2.0}});
  CHECK(full_objective(twins, w) == doctest::Approx(loss_value(twins, 0, w)).epsilon(1e-15));

  // residuals 1, 2, 1 at w = 0
  const auto three = toy(LossKind::least_squares, {{1.0, 1.0}, {2.0, 1.0}, {-1.0, 1.0}});
  CHECK(full_objective(three, vec({0.0})) == 2.0);
}

TEST_CASE("smoothness constants") {
  const auto ls = toy(LossKind::least_squares, {{1.0, 1.0, 0.0}});
  CHECK(ls.smoothness == 2.0);
  // Hessian of (y - <w,x>)^2 is 2 x x^T.
  Eigen::MatrixXd hess = 2.0 * Eigen::Vector2d(1.0, 0.0) * Eigen::Vector2d(1.0, 0.0).transpose();
  CHECK(power_iteration(hess) == doctest::Approx(2.0));

  const auto lg = toy(LossKind::logistic, {{1.0, 2.0, 0.0}});
  CHECK(lg.smoothness == 1.0);

  Dataset zeros;
  zeros.features = Matrix::Zero(3, 2);
  zeros.labels = Vector::Ones(3);
  CHECK(smoothness_constant(zeros, LossKind::least_squares) == kSmoothnessFloor);
  CHECK(smoothness_constant(zeros, LossKind::logistic) == kSmoothnessFloor);

  Dataset empty;
  CHECK_THROWS_AS(smoothness_constant(empty, LossKind::least_squares), std::invalid_argument);
}

TEST_CASE("error paths") {
  const auto ls = toy(LossKind::least_squares, {{1.0, 1.0, 0.0}});
  CHECK_THROWS_AS(loss_value(ls, 1, vec({0.0, 0.0})), std::out_of_range);
  CHECK_THROWS_AS(loss_value(ls, -1, vec({0.0, 0.0})), std::out_of_range);
  CHECK_THROWS_AS(loss_grad(ls, 0, vec({0.0})), std::invalid_argument);
  CHECK_THROWS_AS(full_objective(ls, vec({0.0, 0.0, 0.0})), std::invalid_argument);

  CHECK_THROWS_AS(toy(LossKind::logistic, {{0.5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(toy(LossKind::least_squares, {{1.0, 1.0}}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(toy(LossKind::least_squares, {{1.0, std::numeric_limits<double>::infinity()}}),
                  std::invalid_argument);
  CHECK(parse_loss_kind("ls") == LossKind::least_squares);
  CHECK(parse_loss_kind("logistic") == LossKind::logistic);
  CHECK_THROWS(parse_loss_kind("hinge"));
}

TEST_CASE("gradients match central differences") {
  for (auto kind : {LossKind::least_squares, LossKind::logistic}) {
    const auto inst = testing::random_instance(kind, 30, 6, 11);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Index> pick(0, inst.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      const Index i = pick(rng);
      const Vector w = testing::random_in_ball(rng, inst.dim(), inst.radius);
      const Vector fd = central_difference(inst, i, w, 1e-5);
      const Vector g = loss_grad(inst, i, w);
      const double scale = std::max({g.norm(), fd.norm(), 1e-6});
      CHECK((fd - g).norm() / scale <= 1e-5);
    }
  }
}

TEST_CASE("smoothness, Lipschitz-gradient and convexity witnesses") {
  for (auto kind : {LossKind::least_squares, LossKind::logistic}) {
    const auto inst = testing::random_instance(kind, 25, 5, 3);
    const double beta = inst.smoothness;
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Index> pick(0, inst.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      const Index i = pick(rng);
      const Vector w = testing::random_in_ball(rng, inst.dim(), inst.radius);
      const Vector v = testing::random_in_ball(rng, inst.dim(), inst.radius);
      const double fw = loss_value(inst, i, w);
      const double fv = loss_value(inst, i, v);
      const Vector gv = loss_grad(inst, i, v);
      const double linear = fv + gv.dot(w - v);
      CHECK(fw <= linear + 0.5 * beta * (w - v).squaredNorm() + 1e-9);
      CHECK(fw >= linear - 1e-9);
      CHECK((loss_grad(inst, i, w) - gv).norm() <= beta * (w - v).norm() + 1e-9);
    }
  }
}
