#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "excoef/alternation.hpp"
#include "excoef/error.hpp"
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
  // pairs at 1.2 but full set at 2.9: the pair weights come out negative
  GroundSet ground(3);
  Eigen::ArrayXd values(8);
  values << 0.0, 1.0, 1.0, 1.2, 1.0, 1.2, 1.2, 2.9;
  return EcfTable(ground, std::move(values));
}

bool has_violation(const ValidationReport& report, ViolationKind kind, Subset subset) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const Violation& v) { return v.kind == kind && v.subset == subset; });
}

}  // namespace

TEST_CASE("valid table passes the decisive check") {
  ValidationReport report = validate_ecf(worked_example());
  CHECK(report.valid());
  CHECK(report.violations.empty());
}

TEST_CASE("negative weights are reported per subset with their value") {
  ValidationReport report = validate_ecf(broken_example());
  CHECK_FALSE(report.valid());
  CHECK(has_violation(report, ViolationKind::NegativeTau, Subset::from_indices({0, 1})));
  CHECK(has_violation(report, ViolationKind::NegativeTau, Subset::from_indices({0, 2})));
  CHECK(has_violation(report, ViolationKind::NegativeTau, Subset::from_indices({1, 2})));

  for (const Violation& v : report.violations) {
    CHECK(v.kind == ViolationKind::NegativeTau);
    CHECK(v.value == doctest::Approx(-1.5).epsilon(1e-12));
  }
  CHECK(report.violations.size() == 3);
}

TEST_CASE("all failures are reported, not just the first") {
  GroundSet ground(2);
  Eigen::ArrayXd values(4);
  values << 0.0, 1.3, 1.0, 2.5;  // marginal off and pair above its ceiling
  ValidationReport report = validate_ecf(EcfTable(ground, std::move(values)));
  CHECK(has_violation(report, ViolationKind::Marginal, Subset::singleton(0)));
  CHECK(has_violation(report, ViolationKind::NegativeTau, Subset::from_indices({0, 1})));
  CHECK(report.violations.size() == 2);
}

TEST_CASE("marginal tolerance is sharp around 1e-9") {
  GroundSet ground(2);
  Eigen::ArrayXd close(4);
  close << 0.0, 1.0 + 5e-10, 1.0, 1.5;
  CHECK(validate_ecf(EcfTable(ground, close)).valid());

  Eigen::ArrayXd off(4);
  off << 0.0, 1.0 + 5e-9, 1.0, 1.5;
  CHECK(has_violation(validate_ecf(EcfTable(ground, off)), ViolationKind::Marginal,
                      Subset::singleton(0)));
}

TEST_CASE("direct enumeration agrees on hand-built tables") {
  CHECK(is_completely_alternating_bruteforce(worked_example(), 7, CollectionFamily::AllSubsets));
  CHECK(is_completely_alternating_bruteforce(worked_example(), 3, CollectionFamily::Singletons));
  CHECK_FALSE(
      is_completely_alternating_bruteforce(broken_example(), 7, CollectionFamily::AllSubsets));
  CHECK_FALSE(
      is_completely_alternating_bruteforce(broken_example(), 3, CollectionFamily::Singletons));

  GroundSet ground(3);
  Eigen::ArrayXd independent(8);
  for (SubsetMask mask = 0; mask < 8; ++mask) {
    independent[static_cast<Eigen::Index>(mask)] = std::popcount(mask);
  }
  CHECK(is_completely_alternating_bruteforce(EcfTable(ground, std::move(independent)), 7,
                                             CollectionFamily::AllSubsets));
}

TEST_CASE("direct enumeration rejects oversized inputs") {
  GroundSet ground(6);
  Eigen::ArrayXd values = Eigen::ArrayXd::Zero(64);
  for (SubsetMask mask = 1; mask < 64; ++mask) {
    values[static_cast<Eigen::Index>(mask)] = std::popcount(mask);
  }
  EcfTable table(ground, std::move(values));
  CHECK_THROWS_AS(is_completely_alternating_bruteforce(table, 3), TooLarge);

  EcfTable small = worked_example();
  CHECK_THROWS_AS(is_completely_alternating_bruteforce(small, 0), InvalidArgument);
  CHECK_THROWS_AS(is_completely_alternating_bruteforce(small, 9), InvalidArgument);
}

TEST_CASE("weight signs and direct enumeration give the same verdict") {
  std::mt19937_64 rng(20260815);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);  // 2..5
    EcfTable candidate = testgen::random_candidate_theta(m, rng);
    const bool valid = validate_ecf(candidate).valid();

    const SubsetMask full = (SubsetMask{1} << m) - 1;
    CHECK(valid == is_completely_alternating_bruteforce(candidate, m,
                                                        CollectionFamily::Singletons));
    if (m <= 3) {
      CHECK(valid == is_completely_alternating_bruteforce(
                         candidate, static_cast<int>(full), CollectionFamily::AllSubsets));
    } else if (valid) {
      // shallow general-collection check is a necessary condition
      CHECK(is_completely_alternating_bruteforce(candidate, 3, CollectionFamily::AllSubsets));
    }
  }
}

TEST_CASE("sampled iterated differences of valid tables stay nonpositive") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);
    EcfTable theta = testgen::random_valid_theta(m, rng);
    const SubsetMask full = (SubsetMask{1} << m) - 1;
    std::uniform_int_distribution<SubsetMask> pick(1, full);
    std::uniform_int_distribution<SubsetMask> base_pick(0, full);
    std::uniform_int_distribution<int> len(1, 4);

    for (int rep = 0; rep < 100; ++rep) {
      std::vector<Subset> collection;
      const int k = len(rng);
      for (int i = 0; i < k; ++i) collection.emplace_back(pick(rng));
      CHECK(successive_delta(theta, collection, Subset(base_pick(rng))) <= kEqTolerance);
    }
  }
}

TEST_CASE("convex combinations of valid tables stay valid") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    EcfTable a = testgen::random_valid_theta(4, rng);
    EcfTable b = testgen::random_valid_theta(4, rng);
    const double alpha = unit(rng);
    EcfTable mix(a.ground(), alpha * a.values() + (1.0 - alpha) * b.values());
    CHECK(validate_ecf(mix).valid());
  }
}

TEST_CASE("pointwise limits of valid tables stay valid") {
  std::mt19937_64 rng(12);
  EcfTable target = testgen::random_valid_theta(4, rng);
  EcfTable other = testgen::random_valid_theta(4, rng);
  for (int k = 1; k <= 40; k += 13) {
    const double alpha = std::pow(2.0, -k);
    EcfTable step(target.ground(), (1.0 - alpha) * target.values() + alpha * other.values());
    CHECK(validate_ecf(step).valid());
  }
}

TEST_CASE("capacity validation accepts a rescaled coefficient table") {
  EcfTable theta = worked_example();
  CapacityTable capacity(theta.ground(), theta.values() / 2.0);
  ValidationReport report = validate_capacity(capacity);
  CHECK(report.valid());
}

TEST_CASE("capacity validation pins range, empty set and common marginal") {
  GroundSet ground(2);

  Eigen::ArrayXd bad_range(4);
  bad_range << 0.0, 0.5, 0.5, 1.2;
  CHECK(has_violation(validate_capacity(CapacityTable(ground, bad_range)), ViolationKind::Range,
                      Subset::from_indices({0, 1})));

  Eigen::ArrayXd bad_empty(4);
  bad_empty << 0.1, 0.5, 0.5, 0.75;
  CHECK(has_violation(validate_capacity(CapacityTable(ground, bad_empty)),
                      ViolationKind::EmptySet, Subset{}));

  Eigen::ArrayXd bad_marginal(4);
  bad_marginal << 0.0, 0.5, 0.4, 0.75;
  CHECK(has_violation(validate_capacity(CapacityTable(ground, bad_marginal)),
                      ViolationKind::Marginal, Subset::singleton(1)));

  Eigen::ArrayXd degenerate(4);
  degenerate << 0.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(validate_capacity(CapacityTable(ground, degenerate)), DegenerateMarginal);
}

TEST_CASE("capacity validation finds negative weights after rescaling") {
  EcfTable theta = broken_example();
  CapacityTable capacity(theta.ground(), theta.values() / 3.0);
  ValidationReport report = validate_capacity(capacity);
  CHECK_FALSE(report.valid());
  CHECK(has_violation(report, ViolationKind::NegativeTau, Subset::from_indices({0, 1})));
}

TEST_CASE("violation kinds have stable names") {
  CHECK(to_string(ViolationKind::EmptySet) == "EmptySet");
  CHECK(to_string(ViolationKind::Marginal) == "Marginal");
  CHECK(to_string(ViolationKind::NegativeTau) == "NegativeTau");
  CHECK(to_string(ViolationKind::Range) == "Range");
  CHECK(to_string(ViolationKind::Triangle) == "Triangle");
  CHECK(to_string(ViolationKind::Translation) == "Translation");
}
