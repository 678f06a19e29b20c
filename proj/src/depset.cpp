#include "excoef/depset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "excoef/alternation.hpp"

namespace excoef {

DependencyPolytope::DependencyPolytope(GroundSet ground, std::vector<Halfspace> halfspaces)
    : ground_(std::move(ground)), halfspaces_(std::move(halfspaces)) {
  if (halfspaces_.size() != ground_.table_size() - 1) {
    throw InvalidArgument("expected one halfspace per non-empty subset");
  }
  for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
    if (halfspaces_[i].set.mask() != static_cast<SubsetMask>(i + 1)) {
      throw InvalidArgument("halfspaces must come in increasing mask order");
    }
    if (!std::isfinite(halfspaces_[i].bound)) throw InvalidArgument("bounds must be finite");
  }
}

DependencyPolytope build_polytope(const EcfTable& table) {
  ValidationReport report = validate_ecf(table);
  if (!report.valid()) throw NotCompletelyAlternating(std::move(report));
  std::vector<Halfspace> halfspaces;
  halfspaces.reserve(table.ground().table_size() - 1);
  for (SubsetMask set = 1; set < table.ground().table_size(); ++set) {
    halfspaces.push_back({Subset(set), table(Subset(set))});
  }
  return DependencyPolytope(table.ground(), std::move(halfspaces));
}

double support_function(const EcfTable& table, const Eigen::VectorXd& x) {
  const int m = table.size();
  if (x.size() != m) throw InvalidArgument("direction vector has the wrong size");
  for (int t = 0; t < m; ++t) {
    if (std::isnan(x[t]) || x[t] < 0.0) {
      throw InvalidArgument("direction coordinates must be nonnegative");
    }
  }

  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&x](int a, int b) { return x[a] > x[b]; });

  double total = 0.0;
  Subset prefix;
  double previous = 0.0;
  for (int t : order) {
    prefix = prefix | Subset::singleton(t);
    const double current = table(prefix);
    total += x[t] * (current - previous);
    previous = current;
  }
  return total;
}

bool contains(const DependencyPolytope& polytope, const Eigen::VectorXd& y) {
  const int m = polytope.dimension();
  if (y.size() != m) throw InvalidArgument("point has the wrong dimension");
  for (int t = 0; t < m; ++t) {
    if (std::isnan(y[t]) || y[t] < -kGeomTolerance) return false;
  }
  for (const Halfspace& h : polytope.halfspaces()) {
    double sum = 0.0;
    for (SubsetMask rest = h.set.mask(); rest != 0; rest &= rest - 1) {
      sum += y[std::countr_zero(rest)];
    }
    if (sum > h.bound + kGeomTolerance) return false;
  }
  return true;
}

VertexSet vertices(const DependencyPolytope& polytope) {
  const int m = polytope.dimension();
  if (m > 5) throw TooLarge("vertex enumeration is capped at 5 locations");

  // Constraint rows a.y <= b: one per non-empty subset, then -y_t <= 0.
  const std::size_t subset_rows = polytope.halfspaces().size();
  const std::size_t total_rows = subset_rows + static_cast<std::size_t>(m);
  Eigen::MatrixXd rows(total_rows, m);
  Eigen::VectorXd bounds(total_rows);
  for (std::size_t i = 0; i < subset_rows; ++i) {
    const Halfspace& h = polytope.halfspaces()[i];
    for (int t = 0; t < m; ++t) rows(static_cast<Eigen::Index>(i), t) = h.set.contains(t) ? 1.0 : 0.0;
    bounds[static_cast<Eigen::Index>(i)] = h.bound;
  }
  for (int t = 0; t < m; ++t) {
    const Eigen::Index r = static_cast<Eigen::Index>(subset_rows) + t;
    rows.row(r).setZero();
    rows(r, t) = -1.0;
    bounds[r] = 0.0;
  }

  VertexSet found;
  std::vector<int> pick(static_cast<std::size_t>(m));
  std::iota(pick.begin(), pick.end(), 0);

  Eigen::MatrixXd active(m, m);
  Eigen::VectorXd rhs(m);
  while (true) {
    for (int i = 0; i < m; ++i) {
      active.row(i) = rows.row(pick[static_cast<std::size_t>(i)]);
      rhs[i] = bounds[pick[static_cast<std::size_t>(i)]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(active);
    if (lu.isInvertible()) {
      Eigen::VectorXd candidate = lu.solve(rhs);
      bool feasible = true;
      for (Eigen::Index r = 0; r < rows.rows() && feasible; ++r) {
        if (rows.row(r).dot(candidate) > bounds[r] + kGeomTolerance) feasible = false;
      }
      if (feasible) {
        bool duplicate = false;
        for (const Eigen::VectorXd& v : found) {
          if ((v - candidate).lpNorm<Eigen::Infinity>() <= kGeomTolerance) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) found.push_back(std::move(candidate));
      }
    }

    // Next m-combination of row indices in lexicographic order.
    int slot = m - 1;
    while (slot >= 0 &&
           pick[static_cast<std::size_t>(slot)] ==
               static_cast<int>(total_rows) - m + slot) {
      --slot;
    }
    if (slot < 0) break;
    ++pick[static_cast<std::size_t>(slot)];
    for (int j = slot + 1; j < m; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  std::sort(found.begin(), found.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  });
  return found;
}

Eigen::VectorXd face_touch_check(const EcfTable& table, Subset face) {
  require_within(face, table.size());
  if (face.empty()) throw InvalidArgument("face subset must be non-empty");
  const VertexSet verts = vertices(build_polytope(table));
  if (verts.empty()) throw InvalidArgument("polytope has no vertices");

  Eigen::VectorXd direction = Eigen::VectorXd::Zero(table.size());
  for (int t : face.indices()) direction[t] = 1.0;

  std::size_t best = 0;
  double best_value = direction.dot(verts[0]);
  for (std::size_t i = 1; i < verts.size(); ++i) {
    const double value = direction.dot(verts[i]);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return verts[best];
}

}  // namespace excoef
