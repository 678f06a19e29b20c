#pragma once

#include <vector>

#include <Eigen/Core>

#include "excoef/setfun.hpp"

namespace excoef {

/// Geometric comparison tolerance (feasibility, deduplication, face checks).
inline constexpr double kGeomTolerance = 1e-9;

struct Halfspace {
  Subset set;
  double bound = 0.0;  // constraint: sum of y_t over t in set <= bound
};

/// The dependency polytope of a valid extremal coefficient table: points
/// y >= 0 with sum over t in L of y_t <= theta(L) for every non-empty L.
class DependencyPolytope {
 public:
  DependencyPolytope(GroundSet ground, std::vector<Halfspace> halfspaces);

  const GroundSet& ground() const { return ground_; }
  int dimension() const { return ground_.size(); }
  /// One halfspace per non-empty subset, increasing mask order.
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

 private:
  GroundSet ground_;
  std::vector<Halfspace> halfspaces_;
};

using VertexSet = std::vector<Eigen::VectorXd>;

/// Halfspace description from a table; throws NotCompletelyAlternating when
/// the table does not validate.
DependencyPolytope build_polytope(const EcfTable& table);

/// Support function of the polytope at a nonnegative direction, evaluated by
/// the sorted-coordinate rule: with coordinates visited in decreasing order
/// t_1, t_2, ..., the value is sum_i x_{t_i} (theta(first i) - theta(first i-1)).
double support_function(const EcfTable& table, const Eigen::VectorXd& x);

/// Membership test: every halfspace satisfied within kGeomTolerance, all
/// coordinates >= -kGeomTolerance.
bool contains(const DependencyPolytope& polytope, const Eigen::VectorXd& y);

/// All vertices by active-set enumeration: every choice of m constraints
/// (subset rows plus nonnegativity rows) is solved and kept when the solution
/// is feasible. Deduplicated at kGeomTolerance, sorted lexicographically.
/// Capped at 5 locations.
VertexSet vertices(const DependencyPolytope& polytope);

/// A vertex with maximal coordinate sum over `face`; for a valid table that
/// maximum equals theta(face), i.e. every subset constraint is tight
/// somewhere. Capped at 5 locations.
Eigen::VectorXd face_touch_check(const EcfTable& table, Subset face);

}  // namespace excoef
