#include "mixedgrad/losses.hpp"

#include <cmath>
#include <string>

namespace mixedgrad {

namespace {

void check_index(const ProblemInstance& instance, Index i) {
  if (i < 0 || i >= instance.size()) {
    throw std::out_of_range("example index " + std::to_string(i) + " outside [0, " +
                            std::to_string(instance.size()) + ")");
  }
}

void check_dim(const ProblemInstance& instance, const Vector& w) {
  if (w.size() != instance.dim()) {
    throw std::invalid_argument("dimension mismatch: got " + std::to_string(w.size()) +
                                ", expected " + std::to_string(instance.dim()));
  }
}

// ln(1 + exp(z)) without overflow for large positive z.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// 1 / (1 + exp(z)), stable on both tails.
double logistic_tail(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

}  // namespace

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::least_squares:
      return "ls";
    case LossKind::logistic:
      return "logistic";
  }
  return "unknown";
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "ls" || name == "least_squares") return LossKind::least_squares;
  if (name == "logistic") return LossKind::logistic;
  throw std::invalid_argument("unknown loss kind '" + std::string(name) + "'");
}

void Dataset::validate(LossKind kind) const {
  if (features.rows() < 1 || features.cols() < 1) {
    throw std::invalid_argument("dataset needs at least one example and one feature");
  }
  if (labels.size() != features.rows()) {
    throw std::invalid_argument("label count does not match example count");
  }
  if (!features.allFinite() || !labels.allFinite()) {
    throw std::invalid_argument("dataset contains non-finite entries");
  }
  if (kind == LossKind::logistic) {
    for (Index i = 0; i < labels.size(); ++i) {
      if (labels[i] != 1.0 && labels[i] != -1.0) {
        throw std::invalid_argument("logistic labels must be +1 or -1 (row " +
                                    std::to_string(i) + ")");
      }
    }
  }
}

double smoothness_constant(const Dataset& data, LossKind kind) {
  if (data.size() < 1 || data.dim() < 1) {
    throw std::invalid_argument("smoothness constant of an empty dataset");
  }
  const double max_sq_norm = data.features.rowwise().squaredNorm().maxCoeff();
  const double beta = kind == LossKind::least_squares ? 2.0 * max_sq_norm : 0.25 * max_sq_norm;
  return std::max(beta, kSmoothnessFloor);
}

ProblemInstance make_instance(Dataset data, LossKind kind, double radius) {
  data.validate(kind);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("domain radius must be positive and finite");
  }
  ProblemInstance instance;
  instance.smoothness = smoothness_constant(data, kind);
  instance.data = std::move(data);
  instance.loss = kind;
  instance.radius = radius;
  return instance;
}

double loss_slope(const ProblemInstance& instance, Index i, const Vector& w) {
  check_index(instance, i);
  check_dim(instance, w);
  const double z = instance.data.features.row(i).dot(w);
  const double y = instance.data.labels[i];
  if (instance.loss == LossKind::least_squares) return -2.0 * (y - z);
  return -y * logistic_tail(y * z);
}

double loss_value(const ProblemInstance& instance, Index i, const Vector& w) {
  check_index(instance, i);
  check_dim(instance, w);
  const double z = instance.data.features.row(i).dot(w);
  const double y = instance.data.labels[i];
  if (instance.loss == LossKind::least_squares) {
    const double r = y - z;
    return r * r;
  }
  return softplus(-y * z);
}

Vector loss_grad(const ProblemInstance& instance, Index i, const Vector& w) {
  const double s = loss_slope(instance, i, w);
  return s * instance.data.features.row(i).transpose();
}

double full_objective(const ProblemInstance& instance, const Vector& w) {
  check_dim(instance, w);
  double sum = 0.0;
  for (Index i = 0; i < instance.size(); ++i) sum += loss_value(instance, i, w);
  return sum / static_cast<double>(instance.size());
}

Vector objective_gradient(const ProblemInstance& instance, const Vector& w) {
  check_dim(instance, w);
  Vector g = Vector::Zero(instance.dim());
  for (Index i = 0; i < instance.size(); ++i) {
    g.noalias() += loss_slope(instance, i, w) * instance.data.features.row(i).transpose();
  }
  g /= static_cast<double>(instance.size());
  return g;
}

}  // namespace mixedgrad
