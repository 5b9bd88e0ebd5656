#ifndef MIXEDGRAD_GEOMETRY_HPP
#define MIXEDGRAD_GEOMETRY_HPP

#include "mixedgrad/types.hpp"

namespace mixedgrad {

/// Euclidean projection onto the centered ball of the given radius.
Vector project_ball(const Vector& w, double radius);

/// Feasible set of one epoch in recentered coordinates:
///   { w : |w + anchor| <= outer_radius, |w| <= inner_radius }.
/// The origin must be feasible, which holds whenever |anchor| <= outer_radius.
class EpochDomain {
 public:
  /// Slack allowed on |anchor| <= outer_radius at construction.
  static constexpr double kAnchorSlack = 1e-9;

  EpochDomain(Vector anchor, double outer_radius, double inner_radius);

  const Vector& anchor() const { return anchor_; }
  double outer_radius() const { return outer_radius_; }
  double inner_radius() const { return inner_radius_; }

  bool contains(const Vector& w, double tol = 1e-9) const;

 private:
  Vector anchor_;
  double outer_radius_;
  double inner_radius_;
};

struct DykstraSettings {
  int max_sweeps = 500;
  double move_tolerance = 1e-12;
};

/// Euclidean projection onto the two-ball intersection of an EpochDomain.
/// Uses the single-ball closed forms when one constraint is inactive at the
/// other's projection, and Dykstra's alternating projections otherwise.
Vector project_epoch_domain(const Vector& w, const EpochDomain& domain,
                            const DykstraSettings& settings = {});

}  // namespace mixedgrad

#endif
