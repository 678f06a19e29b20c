#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "excoef/error.hpp"
#include "excoef/transform.hpp"
#include "support/generators.hpp"

using namespace excoef;

namespace {

EcfTable worked_example() {
  GroundSet ground(3);
  Eigen::ArrayXd values(8);
  values << 0.0, 1.0, 1.0, 1.5, 1.0, 1.5, 1.5, 2.0;
  return EcfTable(ground, std::move(values));
}

EcfTable broken_example() {
  GroundSet ground(3);
  Eigen::ArrayXd values(8);
  values << 0.0, 1.0, 1.0, 1.2, 1.0, 1.2, 1.2, 2.9;
  return EcfTable(ground, std::move(values));
}

EcfTable independence(int m) {
  GroundSet ground(m);
  Eigen::ArrayXd values(Eigen::Index{1} << m);
  for (SubsetMask mask = 0; mask < (SubsetMask{1} << m); ++mask) {
    values[static_cast<Eigen::Index>(mask)] = std::popcount(mask);
  }
  return EcfTable(ground, std::move(values));
}

}  // namespace

TEST_CASE("catalog parameter validation") {
  CHECK_THROWS_AS(BernsteinSpec::linear(-0.1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(BernsteinSpec::linear(0.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(BernsteinSpec::power(0.0), InvalidArgument);
  CHECK_THROWS_AS(BernsteinSpec::power(1.5), InvalidArgument);
  CHECK_THROWS_AS(BernsteinSpec::shifted_power(0.0), InvalidArgument);
  CHECK_THROWS_AS(BernsteinSpec::shifted_power(1.0), InvalidArgument);
  CHECK_THROWS_AS(BernsteinSpec::exp_mixture(-1.0, 0.0, {}), InvalidArgument);
  CHECK_THROWS_AS(BernsteinSpec::exp_mixture(0.0, 0.0, {{-1.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(BernsteinSpec::exp_mixture(0.0, 0.0, {{1.0, 0.0}}), InvalidArgument);

  CHECK(BernsteinSpec::power(1.0).kind() == BernsteinSpec::Kind::Power);
  CHECK(BernsteinSpec::shifted_power(-2.0).exponent() == -2.0);
}

TEST_CASE("catalog evaluation at pinned points") {
  CHECK(bernstein_eval(BernsteinSpec::linear(0.25, 2.0), 1.0) == 2.25);
  CHECK(bernstein_eval(BernsteinSpec::power(0.5), 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(bernstein_eval(BernsteinSpec::power(0.5), 0.0) == 0.0);
  CHECK(bernstein_eval(BernsteinSpec::log1p(), 1.0) == doctest::Approx(std::log(2.0)));
  CHECK(bernstein_eval(BernsteinSpec::exp_mixture(0.0, 0.0, {{1.0, 1.0}}), 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(bernstein_eval(BernsteinSpec::shifted_power(0.5), 3.0) == doctest::Approx(1.0));
  CHECK(bernstein_eval(BernsteinSpec::shifted_power(-1.0), 1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(bernstein_eval(BernsteinSpec::log1p(), -0.5), InvalidArgument);
}

TEST_CASE("catalog members are nonnegative, nondecreasing and concave") {
  std::vector<BernsteinSpec> catalog = {
      BernsteinSpec::linear(0.3, 2.0),
      BernsteinSpec::power(0.35),
      BernsteinSpec::log1p(),
      BernsteinSpec::exp_mixture(0.1, 0.5, {{1.0, 1.0}, {0.5, 3.0}}),
      BernsteinSpec::shifted_power(0.5),
      BernsteinSpec::shifted_power(-1.5),
  };
  const double h = 1.0 / 64.0;
  for (const BernsteinSpec& spec : catalog) {
    CAPTURE(spec.describe());
    double prev = bernstein_eval(spec, 0.0);
    CHECK(prev >= 0.0);
    double prev_slope = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 256; ++k) {
      const double value = bernstein_eval(spec, k * h);
      CHECK(value >= prev - 1e-12);
      const double slope = (value - prev) / h;
      CHECK(slope <= prev_slope + 1e-9);
      prev_slope = slope;
      prev = value;
    }
  }
}

TEST_CASE("transformed tables keep the structural pins") {
  EcfTable theta = worked_example();
  EcfTable transformed = transform_ecf(theta, BernsteinSpec::power(0.5));
  CHECK(transformed(Subset{}) == 0.0);
  for (int t = 0; t < 3; ++t) CHECK(transformed(Subset::singleton(t)) == 1.0);
  CHECK(transformed(Subset::from_indices({0, 1})) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  CHECK(transformed(Subset::full(3)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("independence pair maps to the square root") {
  EcfTable transformed = transform_ecf(independence(2), BernsteinSpec::power(0.5));
  CHECK(std::abs(transformed(Subset::from_indices({0, 1})) - std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("transformed tables stay valid across the catalog") {
  std::mt19937_64 rng(61);
  std::vector<BernsteinSpec> catalog = {
      BernsteinSpec::linear(0.3, 2.0),
      BernsteinSpec::power(0.5),
      BernsteinSpec::log1p(),
      BernsteinSpec::exp_mixture(0.1, 0.5, {{1.0, 1.0}, {0.5, 3.0}}),
      BernsteinSpec::shifted_power(0.5),
      BernsteinSpec::shifted_power(-1.0),
  };
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);  // 2..6
    EcfTable theta = testgen::random_valid_theta(m, rng);
    for (const BernsteinSpec& spec : catalog) {
      CAPTURE(spec.describe());
      EcfTable out = transform_ecf(theta, spec);
      CHECK(validate_ecf(out).valid());
    }
  }
}

TEST_CASE("transforms preserve the subset order") {
  std::mt19937_64 rng(62);
  EcfTable theta = testgen::random_valid_theta(4, rng);
  EcfTable out = transform_ecf(theta, BernsteinSpec::log1p());
  for (SubsetMask mask = 1; mask < 16; ++mask) {
    for (int t = 0; t < 4; ++t) {
      const SubsetMask larger = mask | (SubsetMask{1} << t);
      if (larger == mask) continue;
      CHECK(out(Subset{larger}) >= out(Subset{mask}) - 1e-12);
    }
  }
}

TEST_CASE("composing transforms equals transforming by the composition") {
  std::mt19937_64 rng(63);
  BernsteinSpec inner = BernsteinSpec::power(0.5);
  BernsteinSpec outer = BernsteinSpec::log1p();
  for (int trial = 0; trial < 8; ++trial) {
    EcfTable theta = testgen::random_valid_theta(4, rng);
    EcfTable staged = transform_ecf(transform_ecf(theta, inner), outer);

    // normalized composition applied directly
    auto composed = [&](double r) {
      const double g0 = bernstein_eval(inner, 0.0);
      const double g1 = bernstein_eval(inner, 1.0);
      return bernstein_eval(outer, (bernstein_eval(inner, r) - g0) / (g1 - g0));
    };
    const double lo = composed(0.0);
    const double hi = composed(1.0);
    for (SubsetMask mask = 1; mask < 16; ++mask) {
      const double direct = (composed(theta(Subset{mask})) - lo) / (hi - lo);
      CHECK(staged(Subset{mask}) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate and invalid transform inputs") {
  CHECK(BernsteinSpec::linear(0.7, 0.0).constant());
  CHECK_FALSE(BernsteinSpec::linear(0.0, 1.0).constant());
  CHECK_THROWS_AS(transform_ecf(worked_example(), BernsteinSpec::linear(0.7, 0.0)),
                  DegenerateTransform);
  CHECK_THROWS_AS(transform_ecf(broken_example(), BernsteinSpec::power(0.5)),
                  NotCompletelyAlternating);
}

TEST_CASE("triangle inequality holds exhaustively on small valid tables") {
  std::mt19937_64 rng(64);
  std::vector<BernsteinSpec> specs = {
      BernsteinSpec::linear(0.0, 1.0),
      BernsteinSpec::power(0.5),
      BernsteinSpec::log1p(),
  };
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);  // 2..5
    EcfTable theta = testgen::random_valid_theta(m, rng);
    for (const BernsteinSpec& spec : specs) {
      TriangleReport report = triangle_check_theta(theta, spec);
      CHECK(report.valid());
      CHECK(report.exhaustive);
      const std::int64_t subsets = (std::int64_t{1} << m) - 1;
      CHECK(report.checked == subsets * subsets * subsets);
    }
  }
}

TEST_CASE("triangle check finds violations in invalid tables") {
  // A = {0,1}, B = {2}, C = {0}: 2.9 - 1 > (1.2 - 1) + (1.2 - 1)
  TriangleReport report = triangle_check_theta(broken_example(), BernsteinSpec::linear(0.0, 1.0));
  CHECK_FALSE(report.valid());
  CHECK(report.exhaustive);
  for (const Violation& v : report.report.violations) {
    CHECK(v.kind == ViolationKind::Triangle);
    CHECK(v.value < 0.0);
  }
}

TEST_CASE("sampled triangle mode is deterministic and bounded") {
  std::mt19937_64 rng(65);
  EcfTable theta = testgen::random_valid_theta(8, rng);
  TripleSampleSpec sampling;
  sampling.mode = TripleSampleSpec::Mode::Sampled;
  sampling.samples = 5000;
  sampling.seed = 7;
  TriangleReport first = triangle_check_theta(theta, BernsteinSpec::power(0.5), sampling);
  CHECK_FALSE(first.exhaustive);
  CHECK(first.checked == 5000);
  CHECK(first.valid());

  TriangleReport second = triangle_check_theta(theta, BernsteinSpec::power(0.5), sampling);
  CHECK(second.checked == first.checked);
  CHECK(second.report.violations.size() == first.report.violations.size());
}

TEST_CASE("auto mode switches to sampling on large ground sets") {
  std::mt19937_64 rng(66);
  EcfTable small = testgen::random_valid_theta(6, rng);
  CHECK(triangle_check_theta(small, BernsteinSpec::log1p()).exhaustive);

  EcfTable large = testgen::random_valid_theta(7, rng);
  TriangleReport report = triangle_check_theta(large, BernsteinSpec::log1p());
  CHECK_FALSE(report.exhaustive);
  CHECK(report.valid());
}

TEST_CASE("tail dependence triangle over location triples") {
  TauTable tau = build_tau(worked_example());
  TriangleReport report = triangle_check_eta(tau, BernsteinSpec::power(0.5));
  CHECK(report.valid());
  CHECK(report.checked == 6);  // ordered distinct triples of 3 locations

  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 4);  // 3..6
    TauTable random_tau = testgen::random_valid_tau(m, rng);
    TriangleReport r = triangle_check_eta(random_tau, BernsteinSpec::log1p());
    CHECK(r.valid());
    CHECK(r.checked == static_cast<std::int64_t>(m) * (m - 1) * (m - 2));
  }
}
