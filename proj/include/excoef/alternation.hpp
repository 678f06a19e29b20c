#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "excoef/setfun.hpp"

namespace excoef {

enum class ViolationKind {
  EmptySet,      // value on the empty set is not 0
  Marginal,      // a singleton value is off its required level
  NegativeTau,   // an inclusion-exclusion weight is negative
  Range,         // a value escapes its admissible interval
  Triangle,      // a transformed triangle inequality fails
  Translation,   // a shifted subset changes the value
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  Subset subset;
  double value = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Thrown by operations whose input table must validate cleanly.
struct NotCompletelyAlternating : Error {
  ValidationReport report;
  explicit NotCompletelyAlternating(ValidationReport r)
      : Error("table is not a valid extremal coefficient function (" +
              std::to_string(r.violations.size()) + " violation(s))"),
        report(std::move(r)) {}
};

/// Candidate capacity functional on a finite ground set, flat 2^m array.
/// Unlike EcfTable the empty-set entry is stored as given.
class CapacityTable {
 public:
  CapacityTable(GroundSet ground, Eigen::ArrayXd values);

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  const Eigen::ArrayXd& values() const { return values_; }
  double operator()(Subset s) const;

 private:
  GroundSet ground_;
  Eigen::ArrayXd values_;
};

/// Decisive validity check for an extremal coefficient candidate:
///  - value 0 on the empty set (exact; EcfTable pins this),
///  - unit singletons within kEqTolerance,
///  - all inclusion-exclusion weights >= -kEqTolerance.
/// Every failure is reported, not just the first.
ValidationReport validate_ecf(const EcfTable& table);

enum class CollectionFamily {
  AllSubsets,  // collections drawn from every non-empty subset
  Singletons,  // collections of distinct singletons only
};

/// Checks the iterated-difference inequalities by direct enumeration: every
/// collection of distinct sets from the family, up to max_collection_size
/// members, against every base subset. Intended as an independent oracle;
/// cost grows fast, so the ground set is capped at 5 locations.
bool is_completely_alternating_bruteforce(const GroundSet& ground, const Eigen::ArrayXd& values,
                                          int max_collection_size,
                                          CollectionFamily family = CollectionFamily::AllSubsets);

bool is_completely_alternating_bruteforce(const EcfTable& table, int max_collection_size,
                                          CollectionFamily family = CollectionFamily::AllSubsets);

/// Validity check for a capacity functional:
///  (i)   every value inside [0, 1] (Range),
///  (ii)  value 0 on the empty set (EmptySet),
///  (iii) a common singleton level p (Marginal; throws DegenerateMarginal
///        when p is not positive),
///  (iv)  the rescaled table C/p has no negative weights (NegativeTau),
///        checked through validate_ecf on the rescaled table.
ValidationReport validate_capacity(const CapacityTable& table);

}  // namespace excoef
