#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "excoef/maxlinear.hpp"

namespace excoef {

/// Conditioning set too small for a stable exceedance estimate.
struct InsufficientExceedances : Error {
  std::int64_t exceedances;
  explicit InsufficientExceedances(std::int64_t count)
      : Error("only " + std::to_string(count) + " exceedances; need at least 30"),
        exceedances(count) {}
};

struct EstimateResult {
  double point = 0.0;
  double std_error = 0.0;
  std::int64_t replicates = 0;
  std::string method;
};

/// Extremal coefficient of subset a from simulated data: the reciprocal of
/// the subset maximum is exponential with rate theta(a), so the estimate is
/// replicates / sum of reciprocals, with std_error = point / sqrt(replicates).
EstimateResult estimate_theta(const SampleBatch& batch, Subset a);

/// Pair tail dependence from joint exceedances of an absolute threshold:
/// the fraction of replicates with X_s > threshold among those with
/// X_t > threshold. Throws InsufficientExceedances below 30 conditioning
/// replicates; std_error is the binomial one.
EstimateResult estimate_chi(const SampleBatch& batch, int s, int t, double threshold);

struct BoundCheckRow {
  double epsilon = 0.0;
  double empirical = 0.0;    // fraction of replicates with |X_s - X_t| > epsilon
  double std_error = 0.0;
  double exact_bound = 0.0;  // 2 (1 - exp(-eta / epsilon))
  double linear_bound = 0.0; // 2 eta / epsilon
  bool within_bound = false; // empirical <= exact_bound + 4 std_error
};

struct ContinuityBoundReport {
  int s = 0;
  int t = 0;
  double eta = 0.0;
  std::vector<BoundCheckRow> rows;

  bool all_within() const;
};

/// Empirical check of the increment tail bound
/// P(|X_s - X_t| > eps) <= 2 (1 - exp(-eta/eps)) <= 2 eta / eps
/// for the given pair and its tail dependence eta.
ContinuityBoundReport check_continuity_bound(const SampleBatch& batch, int s, int t, double eta,
                                             std::span<const double> epsilons);

struct CdfCheckRow {
  double x = 0.0;
  double y = 0.0;
  double empirical = 0.0;
  double model = 0.0;  // exp(-(eta min(1/x,1/y) + max(1/x,1/y)))
  double abs_error = 0.0;
  bool within_tol = false;
};

struct BivariateCdfReport {
  int s = 0;
  int t = 0;
  double eta = 0.0;
  double tol = 0.0;  // 4 / sqrt(replicates)
  std::vector<CdfCheckRow> rows;

  bool all_within() const;
};

/// Compares the empirical joint CDF of the pair (s,t) against the closed-form
/// bivariate law with the given tail dependence eta on a grid of (x, y)
/// points, using tolerance 4 / sqrt(replicates).
BivariateCdfReport check_bivariate_cdf(const SampleBatch& batch, int s, int t, double eta,
                                       std::span<const std::pair<double, double>> grid);

}  // namespace excoef
