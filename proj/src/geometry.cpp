#include "mixedgrad/geometry.hpp"

#include <cmath>

namespace mixedgrad {

namespace {

void require_finite(const Vector& w, const char* what) {
  if (!w.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite input");
}

Vector project_shifted_ball(const Vector& w, const Vector& anchor, double radius) {
  // { v : |v + anchor| <= radius }
  Vector shifted = w + anchor;
  const double norm = shifted.norm();
  if (norm <= radius) return w;
  shifted *= radius / norm;
  return shifted - anchor;
}

}  // namespace

Vector project_ball(const Vector& w, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("project_ball: radius must be positive");
  require_finite(w, "project_ball");
  double norm = w.norm();
  if (!std::isfinite(norm)) norm = w.stableNorm();
  if (norm <= radius) return w;
  return w * (radius / norm);
}

EpochDomain::EpochDomain(Vector anchor, double outer_radius, double inner_radius)
    : anchor_(std::move(anchor)), outer_radius_(outer_radius), inner_radius_(inner_radius) {
  if (!(outer_radius_ > 0.0) || !(inner_radius_ > 0.0)) {
    throw std::invalid_argument("EpochDomain: radii must be positive");
  }
  require_finite(anchor_, "EpochDomain");
  if (anchor_.norm() > outer_radius_ + kAnchorSlack) {
    throw std::invalid_argument("EpochDomain: anchor lies outside the outer ball, "
                                "intersection may be empty");
  }
}

bool EpochDomain::contains(const Vector& w, double tol) const {
  return w.size() == anchor_.size() && w.norm() <= inner_radius_ + tol &&
         (w + anchor_).norm() <= outer_radius_ + tol;
}

Vector project_epoch_domain(const Vector& w, const EpochDomain& domain,
                            const DykstraSettings& settings) {
  require_finite(w, "project_epoch_domain");
  if (w.size() != domain.anchor().size()) {
    throw std::invalid_argument("project_epoch_domain: dimension mismatch");
  }
  const Vector& a = domain.anchor();
  const double outer = domain.outer_radius();
  const double inner = domain.inner_radius();

  const bool in_inner = w.norm() <= inner;
  const bool in_outer = (w + a).norm() <= outer;
  if (in_inner && in_outer) return w;

  // Exactness shortcuts: a single-ball projection that already satisfies the
  // other constraint is the projection onto the intersection.
  if (!in_inner) {
    Vector candidate = w * (inner / w.norm());
    if ((candidate + a).norm() <= outer) return candidate;
  }
  if (!in_outer) {
    Vector candidate = project_shifted_ball(w, a, outer);
    if (candidate.norm() <= inner) return candidate;
  }

  // Dykstra: alternate outer then inner, carrying the correction terms.
  Vector x = w;
  Vector p = Vector::Zero(w.size());
  Vector q = Vector::Zero(w.size());
  for (int sweep = 0; sweep < settings.max_sweeps; ++sweep) {
    const Vector y = project_shifted_ball(x + p, a, outer);
    p = x + p - y;
    Vector z = y + q;
    const double zn = z.norm();
    Vector next = zn <= inner ? z : Vector(z * (inner / zn));
    q = z - next;
    const double moved = (next - x).norm();
    x = std::move(next);
    if (moved < settings.move_tolerance) break;
  }
  return x;
}

}  // namespace mixedgrad
