#include "excoef/setfun.hpp"

#include <cmath>

namespace excoef {

EcfTable::EcfTable(GroundSet ground, Eigen::ArrayXd values)
    : ground_(std::move(ground)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != ground_.table_size()) {
    throw InvalidArgument("table needs " + std::to_string(ground_.table_size()) +
                          " entries, got " + std::to_string(values_.size()));
  }
  if (values_[0] != 0.0) throw InvalidArgument("table value on the empty set must be 0");
  if (!values_.isFinite().all()) throw InvalidArgument("table entries must be finite");
}

double EcfTable::operator()(Subset s) const {
  require_within(s, ground_.size());
  return values_[static_cast<Eigen::Index>(s.mask())];
}

Eigen::ArrayXd mobius_weights(const Eigen::ArrayXd& values, int m) {
  if (m < 1 || m > ground_set_cap()) throw InvalidArgument("bad ground set size for mobius_weights");
  const SubsetMask full = Subset::full(m).mask();
  if (static_cast<SubsetMask>(values.size()) != full + 1) {
    throw InvalidArgument("mobius_weights table has the wrong size");
  }

  Eigen::ArrayXd weights = Eigen::ArrayXd::Zero(values.size());
  for (SubsetMask set = 1; set <= full; ++set) {
    const SubsetMask rest = full & ~set;
    double acc = 0.0;
    // Iterate I over the submasks of `set`, including the empty one.
    SubsetMask sub = set;
    while (true) {
      const double term = values[static_cast<Eigen::Index>(rest | sub)];
      acc += (std::popcount(sub) % 2 == 1) ? term : -term;
      if (sub == 0) break;
      sub = (sub - 1) & set;
    }
    weights[static_cast<Eigen::Index>(set)] = acc;
  }
  return weights;
}

}  // namespace excoef
