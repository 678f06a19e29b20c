#pragma once

#include <concepts>
#include <span>
#include <type_traits>

#include <Eigen/Core>

#include "excoef/subset.hpp"

namespace excoef {

/// Shared comparison tolerance for table equalities (marginals, weight signs,
/// translation checks).
inline constexpr double kEqTolerance = 1e-9;

/// Weights smaller than this are snapped to zero when a weight table is built.
inline constexpr double kWeightClampTolerance = 1e-12;

/// Candidate extremal coefficient function on a finite ground set, stored as
/// a flat array of length 2^m indexed by subset mask.
///
/// Construction only pins the structural part (value 0 on the empty set,
/// finite entries); unit singletons and complete alternation are properties
/// checked by validate_ecf, so invalid candidates can be represented.
class EcfTable {
 public:
  EcfTable(GroundSet ground, Eigen::ArrayXd values);

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  const Eigen::ArrayXd& values() const { return values_; }

  /// Value on a subset; throws InvalidSubset outside the ground set.
  double operator()(Subset s) const;

 private:
  GroundSet ground_;
  Eigen::ArrayXd values_;
};

/// Pairwise dependence summary. Built so that the algebraic identities
/// theta_pair + chi == 2 and eta == 1 - chi hold exactly.
struct BivariateSummary {
  double theta_pair = 1.0;
  double chi = 1.0;
  double eta = 0.0;

  static BivariateSummary from_chi(double chi) { return {2.0 - chi, chi, 1.0 - chi}; }
};

template <class F>
concept SetFunctionOver = std::invocable<const F&, Subset> &&
                          std::convertible_to<std::invoke_result_t<const F&, Subset>, double>;

/// One-step difference f(A) - f(A | K).
template <SetFunctionOver F>
double delta(const F& f, int m, Subset k, Subset a) {
  require_within(k, m);
  require_within(a, m);
  return static_cast<double>(f(a)) - static_cast<double>(f(a | k));
}

inline double delta(const EcfTable& f, Subset k, Subset a) {
  return delta(f, f.size(), k, a);
}

/// Iterated difference over a collection of subsets, evaluated at base a:
/// sum over sub-collections I of (-1)^|I| f(a | union of I).
///
/// Collections are capped at 24 members; the term count is 2^|collection|.
template <SetFunctionOver F>
double successive_delta(const F& f, int m, std::span<const Subset> collection, Subset a) {
  if (collection.empty()) throw InvalidArgument("successive_delta needs at least one subset");
  if (collection.size() > 24) throw TooLarge("successive_delta collection larger than 24");
  require_within(a, m);
  for (Subset k : collection) require_within(k, m);

  double total = 0.0;
  const std::uint32_t combos = std::uint32_t{1} << collection.size();
  for (std::uint32_t pick = 0; pick < combos; ++pick) {
    Subset joined = a;
    for (std::uint32_t rest = pick; rest != 0; rest &= rest - 1) {
      joined = joined | collection[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    const double term = static_cast<double>(f(joined));
    total += (std::popcount(pick) % 2 == 0) ? term : -term;
  }
  return total;
}

inline double successive_delta(const EcfTable& f, std::span<const Subset> collection, Subset a) {
  return successive_delta(f, f.size(), collection, a);
}

/// Signed inclusion-exclusion weights of a set-function table: for each
/// non-empty L, w_L = sum over I subset of L of (-1)^(|I|+1) f((full \ L) | I),
/// which is the negated iterated difference of the singletons of L at base
/// full \ L. Entry 0 is 0. Runs in O(3^m).
Eigen::ArrayXd mobius_weights(const Eigen::ArrayXd& values, int m);

}  // namespace excoef
