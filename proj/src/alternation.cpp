#include "excoef/alternation.hpp"

#include <cmath>

namespace excoef {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptySet: return "EmptySet";
    case ViolationKind::Marginal: return "Marginal";
    case ViolationKind::NegativeTau: return "NegativeTau";
    case ViolationKind::Range: return "Range";
    case ViolationKind::Triangle: return "Triangle";
    case ViolationKind::Translation: return "Translation";
  }
  return "Unknown";
}

CapacityTable::CapacityTable(GroundSet ground, Eigen::ArrayXd values)
    : ground_(std::move(ground)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != ground_.table_size()) {
    throw InvalidArgument("capacity table needs " + std::to_string(ground_.table_size()) +
                          " entries, got " + std::to_string(values_.size()));
  }
  if (!values_.isFinite().all()) throw InvalidArgument("capacity entries must be finite");
}

double CapacityTable::operator()(Subset s) const {
  require_within(s, ground_.size());
  return values_[static_cast<Eigen::Index>(s.mask())];
}

ValidationReport validate_ecf(const EcfTable& table) {
  ValidationReport report;
  const int m = table.size();
  const Eigen::ArrayXd& values = table.values();

  // EcfTable construction pins the empty set to 0 exactly, so the EmptySet
  // kind can only fire for tables rescaled from a capacity (see below).
  if (values[0] != 0.0) {
    report.violations.push_back({ViolationKind::EmptySet, Subset{}, values[0]});
  }
  for (int t = 0; t < m; ++t) {
    const double v = values[static_cast<Eigen::Index>(Subset::singleton(t).mask())];
    if (std::abs(v - 1.0) > kEqTolerance) {
      report.violations.push_back({ViolationKind::Marginal, Subset::singleton(t), v});
    }
  }

  const Eigen::ArrayXd weights = mobius_weights(values, m);
  for (Eigen::Index i = 1; i < weights.size(); ++i) {
    if (weights[i] < -kEqTolerance) {
      report.violations.push_back(
          {ViolationKind::NegativeTau, Subset(static_cast<SubsetMask>(i)), weights[i]});
    }
  }
  return report;
}

namespace {

// Depth-first enumeration of collections: members are picked in increasing
// mask order, and every prefix is itself a collection, so each collection of
// size <= cap is visited exactly once. `unions` holds `a | union(I)` offsets
// for all sub-collections I of the current prefix and doubles per level.
bool collections_hold(const Eigen::ArrayXd& values, const std::vector<SubsetMask>& family,
                      std::size_t next, std::vector<SubsetMask>& unions, int remaining_depth,
                      SubsetMask full) {
  if (remaining_depth == 0) return true;
  for (std::size_t pick = next; pick < family.size(); ++pick) {
    const SubsetMask chosen = family[pick];
    const std::size_t half = unions.size();
    for (std::size_t i = 0; i < half; ++i) unions.push_back(unions[i] | chosen);

    // The sign of a term is (-1)^|I|; sub-collections in the second half
    // include `chosen`, so their sign is flipped relative to the first half.
    for (SubsetMask base = 0; base <= full; ++base) {
      double acc = 0.0;
      for (std::size_t i = 0; i < half; ++i) {
        const double parity = (std::popcount(static_cast<SubsetMask>(i)) % 2 == 0) ? 1.0 : -1.0;
        acc += parity * values[static_cast<Eigen::Index>(base | unions[i])];
        acc -= parity * values[static_cast<Eigen::Index>(base | unions[half + i])];
      }
      if (acc > kEqTolerance) {
        unions.resize(half);
        return false;
      }
    }

    if (!collections_hold(values, family, pick + 1, unions, remaining_depth - 1, full)) {
      unions.resize(half);
      return false;
    }
    unions.resize(half);
  }
  return true;
}

}  // namespace

bool is_completely_alternating_bruteforce(const GroundSet& ground, const Eigen::ArrayXd& values,
                                          int max_collection_size, CollectionFamily family) {
  const int m = ground.size();
  if (m > 5) throw TooLarge("brute-force alternation check is capped at 5 locations");
  if (static_cast<std::size_t>(values.size()) != ground.table_size()) {
    throw InvalidArgument("value table has the wrong size");
  }
  const SubsetMask full = ground.full().mask();
  if (max_collection_size < 1 || static_cast<SubsetMask>(max_collection_size) > full) {
    throw InvalidArgument("max_collection_size must be in [1, 2^m - 1]");
  }

  std::vector<SubsetMask> candidates;
  if (family == CollectionFamily::Singletons) {
    for (int t = 0; t < m; ++t) candidates.push_back(Subset::singleton(t).mask());
  } else {
    for (SubsetMask set = 1; set <= full; ++set) candidates.push_back(set);
  }

  std::vector<SubsetMask> unions{0};
  return collections_hold(values, candidates, 0, unions, max_collection_size, full);
}

bool is_completely_alternating_bruteforce(const EcfTable& table, int max_collection_size,
                                          CollectionFamily family) {
  return is_completely_alternating_bruteforce(table.ground(), table.values(), max_collection_size,
                                              family);
}

ValidationReport validate_capacity(const CapacityTable& table) {
  ValidationReport report;
  const int m = table.size();
  const Eigen::ArrayXd& values = table.values();

  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < -kEqTolerance || values[i] > 1.0 + kEqTolerance) {
      report.violations.push_back(
          {ViolationKind::Range, Subset(static_cast<SubsetMask>(i)), values[i]});
    }
  }
  if (std::abs(values[0]) > kEqTolerance) {
    report.violations.push_back({ViolationKind::EmptySet, Subset{}, values[0]});
  }

  const double p = values[static_cast<Eigen::Index>(Subset::singleton(0).mask())];
  if (p <= kEqTolerance) {
    throw DegenerateMarginal("capacity has singleton level " + std::to_string(p) +
                             "; rescaling is undefined");
  }
  for (int t = 1; t < m; ++t) {
    const double v = values[static_cast<Eigen::Index>(Subset::singleton(t).mask())];
    if (std::abs(v - p) > kEqTolerance) {
      report.violations.push_back({ViolationKind::Marginal, Subset::singleton(t), v});
    }
  }

  // Rescale to unit singletons and reuse the extremal-coefficient weight
  // check. Empty-set and marginal findings of the rescaled table duplicate
  // (ii)/(iii) at a different scale, so only weight findings are kept.
  Eigen::ArrayXd scaled = values / p;
  scaled[0] = 0.0;
  const ValidationReport inner = validate_ecf(EcfTable(table.ground(), std::move(scaled)));
  for (const Violation& v : inner.violations) {
    if (v.kind == ViolationKind::NegativeTau) report.violations.push_back(v);
  }
  return report;
}

}  // namespace excoef
