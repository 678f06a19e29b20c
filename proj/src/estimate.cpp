#include "excoef/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace excoef {

namespace {

void check_pair(const SampleBatch& batch, int s, int t) {
  const int m = batch.ground.size();
  if (s < 0 || s >= m || t < 0 || t >= m) throw InvalidSubset("location index out of range");
  if (batch.replicates() < 1) throw InvalidArgument("batch is empty");
}

double binomial_std_error(double p, double n) { return std::sqrt(std::max(0.0, p * (1.0 - p)) / n); }

}  // namespace

EstimateResult estimate_theta(const SampleBatch& batch, Subset a) {
  require_within(a, batch.ground.size());
  if (a.empty()) throw InvalidArgument("cannot estimate on the empty set");
  const std::int64_t n = batch.replicates();
  if (n < 2) throw InvalidArgument("need at least two replicates");

  const std::vector<int> members = a.indices();
  double sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    double peak = 0.0;
    for (int t : members) peak = std::max(peak, batch.values(i, t));
    if (!(peak > 0.0)) throw InvalidArgument("batch entries must be strictly positive");
    sum += 1.0 / peak;
  }

  EstimateResult out;
  out.point = static_cast<double>(n) / sum;
  out.std_error = out.point / std::sqrt(static_cast<double>(n));
  out.replicates = n;
  out.method = "reciprocal-max rate";
  return out;
}

EstimateResult estimate_chi(const SampleBatch& batch, int s, int t, double threshold) {
  check_pair(batch, s, t);
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw InvalidArgument("threshold must be positive and finite");
  }

  const std::int64_t n = batch.replicates();
  std::int64_t conditioning = 0;
  std::int64_t joint = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (batch.values(i, t) > threshold) {
      ++conditioning;
      if (batch.values(i, s) > threshold) ++joint;
    }
  }
  if (conditioning < 30) throw InsufficientExceedances(conditioning);

  EstimateResult out;
  out.point = static_cast<double>(joint) / static_cast<double>(conditioning);
  out.std_error = binomial_std_error(out.point, static_cast<double>(conditioning));
  out.replicates = conditioning;
  out.method = "conditional exceedance";
  return out;
}

bool ContinuityBoundReport::all_within() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const BoundCheckRow& row) { return row.within_bound; });
}

ContinuityBoundReport check_continuity_bound(const SampleBatch& batch, int s, int t, double eta,
                                             std::span<const double> epsilons) {
  check_pair(batch, s, t);
  if (std::isnan(eta) || eta < 0.0) throw InvalidArgument("eta must be nonnegative");

  ContinuityBoundReport out;
  out.s = s;
  out.t = t;
  out.eta = eta;
  const std::int64_t n = batch.replicates();
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("epsilon must be positive");
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      if (std::abs(batch.values(i, s) - batch.values(i, t)) > eps) ++hits;
    }
    BoundCheckRow row;
    row.epsilon = eps;
    row.empirical = static_cast<double>(hits) / static_cast<double>(n);
    row.std_error = binomial_std_error(row.empirical, static_cast<double>(n));
    row.exact_bound = 2.0 * -std::expm1(-eta / eps);
    row.linear_bound = 2.0 * eta / eps;
    row.within_bound = row.empirical <= row.exact_bound + 4.0 * row.std_error;
    out.rows.push_back(row);
  }
  return out;
}

bool BivariateCdfReport::all_within() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const CdfCheckRow& row) { return row.within_tol; });
}

BivariateCdfReport check_bivariate_cdf(const SampleBatch& batch, int s, int t, double eta,
                                       std::span<const std::pair<double, double>> grid) {
  check_pair(batch, s, t);
  if (std::isnan(eta) || eta < 0.0) throw InvalidArgument("eta must be nonnegative");

  BivariateCdfReport out;
  out.s = s;
  out.t = t;
  out.eta = eta;
  const std::int64_t n = batch.replicates();
  out.tol = 4.0 / std::sqrt(static_cast<double>(n));
  for (const auto& [x, y] : grid) {
    if (!(x > 0.0) || !(y > 0.0)) throw InvalidArgument("grid points must be positive");
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      if (batch.values(i, s) <= x && batch.values(i, t) <= y) ++hits;
    }
    CdfCheckRow row;
    row.x = x;
    row.y = y;
    row.empirical = static_cast<double>(hits) / static_cast<double>(n);
    const double a = 1.0 / x;
    const double b = 1.0 / y;
    row.model = std::exp(-(eta * std::min(a, b) + std::max(a, b)));
    row.abs_error = std::abs(row.empirical - row.model);
    row.within_tol = row.abs_error <= out.tol;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace excoef
