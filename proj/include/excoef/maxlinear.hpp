#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "excoef/alternation.hpp"
#include "excoef/setfun.hpp"

namespace excoef {

/// Weight table of a max-linear spectral representation: one nonnegative
/// weight per non-empty subset, with the weights covering each location
/// summing to one. Valid by construction; weights below
/// kWeightClampTolerance are snapped to zero.
class TauTable {
 public:
  TauTable(GroundSet ground, Eigen::ArrayXd weights);

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  const Eigen::ArrayXd& weights() const { return weights_; }
  double operator()(Subset s) const;

  /// Subsets carrying positive weight, in increasing mask order.
  std::vector<Subset> support() const;

 private:
  GroundSet ground_;
  Eigen::ArrayXd weights_;
};

enum class NormKind { Max, Sum, Euclidean };

std::string_view to_string(NormKind kind);

struct SpectralAtom {
  double weight = 0.0;
  Eigen::VectorXd point;  // unit length in the chosen norm
};

/// Discrete spectral measure of a max-linear model: one atom per supported
/// subset, rescaled to the chosen reference norm.
struct SpectralAtoms {
  NormKind norm = NormKind::Max;
  std::vector<SpectralAtom> atoms;
};

/// Simulated field values: one replicate per row, one location per column.
/// Entries are strictly positive by construction.
struct SampleBatch {
  GroundSet ground;
  Eigen::MatrixXd values;
  std::uint64_t seed = 0;
  std::string model_digest;

  std::int64_t replicates() const { return static_cast<std::int64_t>(values.rows()); }
};

/// Distribution of a random subset Z of the ground set: probability q_L per
/// subset (empty set included), q >= 0, summing to one, with the inclusion
/// probability P(t in Z) identical across locations.
class RandomSetDistribution {
 public:
  RandomSetDistribution(GroundSet ground, Eigen::ArrayXd probabilities);

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  const Eigen::ArrayXd& probabilities() const { return probabilities_; }
  double operator()(Subset s) const;

  /// Common singleton inclusion probability P(t in Z).
  double inclusion_probability() const { return inclusion_; }

  /// Conditional co-occurrence P(s in Z | t in Z); requires a positive
  /// inclusion probability.
  double cooccurrence(int s, int t) const;

 private:
  GroundSet ground_;
  Eigen::ArrayXd probabilities_;
  double inclusion_ = 0.0;
};

// ==== construction and recovery =============================================

/// Weights of the max-linear representation of a valid extremal coefficient
/// table. Throws NotCompletelyAlternating when validate_ecf reports anything.
TauTable build_tau(const EcfTable& table);

/// Extremal coefficient of subset a recovered from weights:
/// sum of tau_L over L meeting a; 0 for the empty set.
double recover_theta(const TauTable& tau, Subset a);

/// Full extremal coefficient table recovered from weights, computed with a
/// zeta transform over subset sums in O(m 2^m).
EcfTable theta_from_tau(const TauTable& tau);

/// Weight table of the sub-model on the locations of `keep` (relabelled in
/// increasing order): collapses every subset onto its trace on `keep`.
TauTable marginalize(const TauTable& tau, Subset keep);

// ==== distribution ===========================================================

/// P(X_t <= x_t for all t) for the max-linear field with these weights.
/// Coordinates must be positive; +infinity is allowed.
double joint_cdf(const TauTable& tau, const Eigen::VectorXd& x);

/// Stable tail dependence function: sum of tau_L max over t in L of x_t,
/// for nonnegative x. Equals -log joint_cdf at coordinates 1/x_t.
double stable_tail_dependence(const TauTable& tau, const Eigen::VectorXd& x);

/// Pairwise summary for locations s and t.
BivariateSummary bivariate(const TauTable& tau, int s, int t);

/// Spectral measure atoms under the requested reference norm.
SpectralAtoms spectral_atoms(const TauTable& tau, NormKind norm = NormKind::Max);

// ==== simulation =============================================================

/// Hash of the weight table (ground size, labels, weight bits); stable across
/// runs and platforms with IEEE doubles.
std::string tau_digest(const TauTable& tau);

/// Exact simulation of the max-linear field: replicate i draws one Frechet
/// variable per supported subset (stream = subset mask) and takes maxima of
/// the weighted draws. Replicate i depends on (seed, i) only.
SampleBatch simulate(const TauTable& tau, std::int64_t replicates, std::uint64_t seed);

// ==== random-set view ========================================================

/// Binary realization of a valid extremal coefficient table: a random-set
/// distribution with q_L = tau_L / bound and the leftover mass on the empty
/// set. `bound` defaults to the full-set coefficient, its smallest admissible
/// value; smaller values throw BoundTooSmall.
RandomSetDistribution binary_realization(const EcfTable& table,
                                         std::optional<double> bound = std::nullopt);

/// Draws n subsets by inverting the cumulative distribution; draw i uses the
/// counter cell (seed, i, 0).
std::vector<Subset> sample_sets(const RandomSetDistribution& dist, std::int64_t n,
                                std::uint64_t seed);

/// Convex combination of two valid tables on the same ground set:
/// alpha * a + (1 - alpha) * b, validated on the way in.
EcfTable max_combine(const EcfTable& a, const EcfTable& b, double alpha);

/// Distribution of the intersection of two independent random sets on the
/// same ground set. O(4^m); capped at 12 locations.
RandomSetDistribution product_chi(const RandomSetDistribution& a,
                                  const RandomSetDistribution& b);

}  // namespace excoef
