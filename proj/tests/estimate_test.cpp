#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "excoef/error.hpp"
#include "excoef/estimate.hpp"
#include "support/generators.hpp"

using namespace excoef;

namespace {

EcfTable worked_example() {
  GroundSet ground(3);
  Eigen::ArrayXd values(8);
  values << 0.0, 1.0, 1.0, 1.5, 1.0, 1.5, 1.5, 2.0;
  return EcfTable(ground, std::move(values));
}

TauTable worked_tau() { return build_tau(worked_example()); }

TauTable complete_dependence(int m) {
  GroundSet ground(m);
  Eigen::ArrayXd weights = Eigen::ArrayXd::Zero(Eigen::Index{1} << m);
  weights[(Eigen::Index{1} << m) - 1] = 1.0;
  return TauTable(ground, std::move(weights));
}

TauTable independence(int m) {
  GroundSet ground(m);
  Eigen::ArrayXd weights = Eigen::ArrayXd::Zero(Eigen::Index{1} << m);
  for (int t = 0; t < m; ++t) weights[Eigen::Index{1} << t] = 1.0;
  return TauTable(ground, std::move(weights));
}

double column_quantile(const SampleBatch& batch, int column, double level) {
  std::vector<double> sorted(batch.values.col(column).data(),
                             batch.values.col(column).data() + batch.values.rows());
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(level * static_cast<double>(sorted.size()));
  return sorted[std::min(rank, sorted.size() - 1)];
}

}  // namespace

TEST_CASE("coefficient estimate concentrates at the true value") {
  const std::int64_t n = 100000;
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));

  SampleBatch dependent = simulate(complete_dependence(3), n, 7);
  EstimateResult full = estimate_theta(dependent, Subset::full(3));
  CHECK(std::abs(full.point - 1.0) <= 1.0 * tol);
  CHECK(full.replicates == n);
  CHECK(full.std_error == doctest::Approx(full.point / std::sqrt(static_cast<double>(n))));
  CHECK(full.method == "reciprocal-max rate");

  SampleBatch indep = simulate(independence(2), n, 8);
  CHECK(std::abs(estimate_theta(indep, Subset::full(2)).point - 2.0) <= 2.0 * tol);

  SampleBatch worked = simulate(worked_tau(), n, 9);
  CHECK(std::abs(estimate_theta(worked, Subset::full(3)).point - 2.0) <= 2.0 * tol);
  CHECK(std::abs(estimate_theta(worked, Subset::from_indices({0, 1})).point - 1.5) <= 1.5 * tol);
  CHECK(std::abs(estimate_theta(worked, Subset::singleton(1)).point - 1.0) <= 1.0 * tol);
}

TEST_CASE("coefficient estimate rejects bad arguments") {
  SampleBatch batch = simulate(worked_tau(), 100, 1);
  CHECK_THROWS_AS(estimate_theta(batch, Subset{}), InvalidArgument);
  CHECK_THROWS_AS(estimate_theta(batch, Subset::from_indices({0, 3})), InvalidSubset);

  SampleBatch single = simulate(worked_tau(), 1, 1);
  CHECK_THROWS_AS(estimate_theta(single, Subset::singleton(0)), InvalidArgument);
}

TEST_CASE("tail dependence estimate against the closed-form conditional") {
  const std::int64_t n = 400000;
  SampleBatch batch = simulate(worked_tau(), n, 17);
  const double threshold = column_quantile(batch, 1, 0.99);

  EstimateResult chi = estimate_chi(batch, 0, 1, threshold);
  // at a finite threshold u the conditional probability is
  // (1 - 2 exp(-1/u) + exp(-theta/u)) / (1 - exp(-1/u)) with theta = 1.5
  const double pu = -std::expm1(-1.0 / threshold);
  const double joint = 1.0 - 2.0 * std::exp(-1.0 / threshold) + std::exp(-1.5 / threshold);
  const double exact = joint / pu;
  CHECK(std::abs(chi.point - exact) <= 5.0 * chi.std_error);
  CHECK(std::abs(chi.point - 0.5) <= 0.03);
  CHECK(chi.method == "conditional exceedance");

  EstimateResult reversed = estimate_chi(batch, 1, 0, column_quantile(batch, 0, 0.99));
  CHECK(std::abs(reversed.point - chi.point) <= 0.05);
}

TEST_CASE("tail dependence estimate needs enough exceedances") {
  SampleBatch batch = simulate(worked_tau(), 2000, 5);
  const double too_high = batch.values.col(1).maxCoeff() + 1.0;
  CHECK_THROWS_AS(estimate_chi(batch, 0, 1, too_high), InsufficientExceedances);
  try {
    estimate_chi(batch, 0, 1, too_high);
  } catch (const InsufficientExceedances& e) {
    CHECK(e.exceedances == 0);
  }
  CHECK_THROWS_AS(estimate_chi(batch, 0, 5, 1.0), InvalidSubset);
  CHECK_THROWS_AS(estimate_chi(batch, 0, 1, -2.0), InvalidArgument);
}

TEST_CASE("tail dependence of independent locations decays with the threshold") {
  const std::int64_t n = 400000;
  SampleBatch batch = simulate(independence(2), n, 23);
  double previous = 1.0;
  for (double level : {0.9, 0.95, 0.99}) {
    EstimateResult chi = estimate_chi(batch, 0, 1, column_quantile(batch, 1, level));
    CHECK(chi.point < previous);
    previous = chi.point;
  }
  CHECK(previous <= 0.05);
}

TEST_CASE("increment tail bound on the worked pair") {
  const std::int64_t n = 200000;
  SampleBatch batch = simulate(worked_tau(), n, 29);
  const std::vector<double> epsilons = {0.25, 0.5, 1.0, 2.0, 4.0};
  ContinuityBoundReport report = check_continuity_bound(batch, 0, 1, 0.5, epsilons);

  CHECK(report.rows.size() == 5);
  CHECK(report.eta == 0.5);
  CHECK(report.all_within());
  for (const BoundCheckRow& row : report.rows) {
    CHECK(row.exact_bound == doctest::Approx(2.0 * -std::expm1(-0.5 / row.epsilon)).epsilon(1e-15));
    CHECK(row.linear_bound == doctest::Approx(row.epsilon == 0.0 ? 0.0 : 1.0 / row.epsilon));
    CHECK(row.linear_bound >= row.exact_bound);
    CHECK(row.within_bound);
    CHECK(row.empirical >= 0.0);
  }
  CHECK(report.rows[2].exact_bound == doctest::Approx(2.0 * (1.0 - std::exp(-0.5))).epsilon(1e-15));
}

TEST_CASE("increment bound is tight for complete dependence") {
  SampleBatch batch = simulate(complete_dependence(2), 50000, 31);
  const std::vector<double> epsilons = {0.1, 1.0};
  ContinuityBoundReport report = check_continuity_bound(batch, 0, 1, 0.0, epsilons);
  for (const BoundCheckRow& row : report.rows) {
    CHECK(row.empirical == 0.0);
    CHECK(row.exact_bound == 0.0);
  }
  CHECK(report.all_within());
}

TEST_CASE("increment bound rejects bad arguments") {
  SampleBatch batch = simulate(worked_tau(), 100, 2);
  const std::vector<double> good = {1.0};
  const std::vector<double> bad = {0.0};
  CHECK_THROWS_AS(check_continuity_bound(batch, 0, 1, -0.1, good), InvalidArgument);
  CHECK_THROWS_AS(check_continuity_bound(batch, 0, 1, 0.5, bad), InvalidArgument);
  CHECK_THROWS_AS(check_continuity_bound(batch, 0, 4, 0.5, good), InvalidSubset);
}

TEST_CASE("bivariate law matches the empirical joint distribution") {
  const std::int64_t n = 200000;
  SampleBatch batch = simulate(worked_tau(), n, 37);
  std::vector<std::pair<double, double>> grid;
  for (double x : {0.5, 1.0, 2.0}) {
    for (double y : {0.5, 1.0, 2.0}) grid.emplace_back(x, y);
  }

  BivariateCdfReport report = check_bivariate_cdf(batch, 0, 1, 0.5, grid);
  CHECK(report.rows.size() == 9);
  CHECK(report.tol == doctest::Approx(4.0 / std::sqrt(static_cast<double>(n))));
  CHECK(report.all_within());
  for (const CdfCheckRow& row : report.rows) {
    const double a = 1.0 / row.x;
    const double b = 1.0 / row.y;
    const double expected = std::exp(-(0.5 * std::min(a, b) + std::max(a, b)));
    CHECK(row.model == doctest::Approx(expected).epsilon(1e-15));
    CHECK(row.abs_error <= report.tol);
  }

  // the wrong tail dependence value fails the comparison
  BivariateCdfReport wrong = check_bivariate_cdf(batch, 0, 1, 1.0, grid);
  CHECK_FALSE(wrong.all_within());
}

TEST_CASE("bivariate law check rejects bad grids") {
  SampleBatch batch = simulate(worked_tau(), 100, 3);
  std::vector<std::pair<double, double>> bad = {{0.0, 1.0}};
  CHECK_THROWS_AS(check_bivariate_cdf(batch, 0, 1, 0.5, bad), InvalidArgument);
  CHECK_THROWS_AS(check_bivariate_cdf(batch, 0, 1, -0.5, bad), InvalidArgument);
}
