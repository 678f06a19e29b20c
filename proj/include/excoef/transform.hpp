#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "excoef/alternation.hpp"
#include "excoef/maxlinear.hpp"

namespace excoef {

/// One exponential component of a mixture: weight * (1 - exp(-rate * r)).
struct ExpAtom {
  double weight = 0.0;
  double rate = 0.0;
};

/// A Bernstein function from a small parametric catalog. All catalog members
/// are nonnegative, nondecreasing and concave on [0, infinity).
class BernsteinSpec {
 public:
  enum class Kind { Linear, Power, Log1p, ExpMixture, ShiftedPower };

  /// c + b r with c, b >= 0.
  static BernsteinSpec linear(double offset, double slope);
  /// r^q with 0 < q <= 1.
  static BernsteinSpec power(double exponent);
  /// log(1 + r).
  static BernsteinSpec log1p();
  /// c + b r + sum_k w_k (1 - exp(-rate_k r)), all parameters nonnegative,
  /// weights and rates positive.
  static BernsteinSpec exp_mixture(double offset, double slope, std::vector<ExpAtom> atoms);
  /// (1 + r)^e - 1 for 0 < e < 1, and 1 - (1 + r)^e for e < 0.
  static BernsteinSpec shifted_power(double exponent);

  Kind kind() const { return kind_; }
  double offset() const { return offset_; }
  double slope() const { return slope_; }
  double exponent() const { return exponent_; }
  const std::vector<ExpAtom>& atoms() const { return atoms_; }

  /// True when the function never moves: transforms through it are undefined.
  bool constant() const;

  /// One-line description for reports.
  std::string describe() const;

 private:
  BernsteinSpec() = default;

  Kind kind_ = Kind::Linear;
  double offset_ = 0.0;
  double slope_ = 0.0;
  double exponent_ = 0.0;
  std::vector<ExpAtom> atoms_;
};

/// Evaluates the function at r >= 0; negative r throws InvalidArgument.
double bernstein_eval(const BernsteinSpec& spec, double r);

/// Pushes a valid extremal coefficient table through g and renormalizes:
/// value' = (g(value) - g(0)) / (g(1) - g(0)), with the empty set pinned to 0
/// and singletons pinned to 1 exactly. Constant g throws DegenerateTransform;
/// an invalid input table throws NotCompletelyAlternating.
EcfTable transform_ecf(const EcfTable& table, const BernsteinSpec& spec);

struct TripleSampleSpec {
  enum class Mode { Auto, Exhaustive, Sampled };
  Mode mode = Mode::Auto;          // Auto: exhaustive while (2^m - 1)^3 <= 1e6
  std::int64_t samples = 20000;    // triple count in sampled mode
  std::uint64_t seed = 0;
};

struct TriangleReport {
  ValidationReport report;
  std::int64_t checked = 0;
  bool exhaustive = true;

  bool valid() const { return report.valid(); }
};

/// Checks g(theta(A|B) - 1) <= g(theta(A|C) - 1) + g(theta(C|B) - 1) over
/// triples of non-empty subsets. Violations carry the union A|B|C and the
/// (negative) slack rhs - lhs.
TriangleReport triangle_check_theta(const EcfTable& table, const BernsteinSpec& spec,
                                    const TripleSampleSpec& sampling = {});

/// Checks the same inequality for pair tail dependence: g(eta(s,t)) <=
/// g(eta(s,r)) + g(eta(r,t)) over all location triples. Violations carry the
/// subset {s,t,r}.
TriangleReport triangle_check_eta(const TauTable& tau, const BernsteinSpec& spec);

}  // namespace excoef
