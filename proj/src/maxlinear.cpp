#include "excoef/maxlinear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>

#include "excoef/rng.hpp"

namespace excoef {

namespace {

void check_location(int t, int m) {
  if (t < 0 || t >= m) throw InvalidSubset("location index out of range: " + std::to_string(t));
}

double subset_norm(int members, NormKind norm) {
  switch (norm) {
    case NormKind::Max: return 1.0;
    case NormKind::Sum: return static_cast<double>(members);
    case NormKind::Euclidean: return std::sqrt(static_cast<double>(members));
  }
  throw InvalidArgument("unknown norm kind");
}

}  // namespace

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Max: return "max";
    case NormKind::Sum: return "sum";
    case NormKind::Euclidean: return "euclidean";
  }
  return "unknown";
}

// ==== TauTable ===============================================================

TauTable::TauTable(GroundSet ground, Eigen::ArrayXd weights)
    : ground_(std::move(ground)), weights_(std::move(weights)) {
  if (static_cast<std::size_t>(weights_.size()) != ground_.table_size()) {
    throw InvalidArgument("weight table needs " + std::to_string(ground_.table_size()) +
                          " entries, got " + std::to_string(weights_.size()));
  }
  if (!weights_.isFinite().all()) throw InvalidArgument("weights must be finite");
  if (weights_[0] != 0.0 && std::abs(weights_[0]) > kEqTolerance) {
    throw InvalidArgument("the empty set cannot carry weight");
  }
  weights_[0] = 0.0;
  for (Eigen::Index i = 1; i < weights_.size(); ++i) {
    if (weights_[i] < -kEqTolerance) {
      throw InvalidArgument("negative weight " + std::to_string(weights_[i]) + " on subset {" +
                            format_subset(Subset(static_cast<SubsetMask>(i))) + "}");
    }
  }

  // Marginal sums are checked before clamping so that snapping many tiny
  // weights cannot push a marginal outside tolerance unnoticed.
  const int m = ground_.size();
  for (int t = 0; t < m; ++t) {
    const SubsetMask bit = Subset::singleton(t).mask();
    double sum = 0.0;
    for (Eigen::Index i = 1; i < weights_.size(); ++i) {
      if (static_cast<SubsetMask>(i) & bit) sum += weights_[i];
    }
    if (std::abs(sum - 1.0) > kEqTolerance) {
      throw InvalidArgument("weights covering location " + std::to_string(t) + " sum to " +
                            std::to_string(sum) + ", expected 1");
    }
  }

  weights_ = (weights_ < kWeightClampTolerance).select(0.0, weights_);
}

double TauTable::operator()(Subset s) const {
  require_within(s, ground_.size());
  return weights_[static_cast<Eigen::Index>(s.mask())];
}

std::vector<Subset> TauTable::support() const {
  std::vector<Subset> out;
  for (Eigen::Index i = 1; i < weights_.size(); ++i) {
    if (weights_[i] > 0.0) out.push_back(Subset(static_cast<SubsetMask>(i)));
  }
  return out;
}

// ==== RandomSetDistribution ==================================================

RandomSetDistribution::RandomSetDistribution(GroundSet ground, Eigen::ArrayXd probabilities)
    : ground_(std::move(ground)), probabilities_(std::move(probabilities)) {
  if (static_cast<std::size_t>(probabilities_.size()) != ground_.table_size()) {
    throw InvalidArgument("probability table has the wrong size");
  }
  if (!probabilities_.isFinite().all()) throw InvalidArgument("probabilities must be finite");
  for (Eigen::Index i = 0; i < probabilities_.size(); ++i) {
    if (probabilities_[i] < -kEqTolerance) {
      throw InvalidArgument("negative probability on subset {" +
                            format_subset(Subset(static_cast<SubsetMask>(i))) + "}");
    }
    if (probabilities_[i] < 0.0) probabilities_[i] = 0.0;
  }
  const double total = probabilities_.sum();
  if (std::abs(total - 1.0) > kEqTolerance) {
    throw InvalidArgument("probabilities sum to " + std::to_string(total) + ", expected 1");
  }

  const int m = ground_.size();
  for (int t = 0; t < m; ++t) {
    const SubsetMask bit = Subset::singleton(t).mask();
    double sum = 0.0;
    for (Eigen::Index i = 1; i < probabilities_.size(); ++i) {
      if (static_cast<SubsetMask>(i) & bit) sum += probabilities_[i];
    }
    if (t == 0) {
      inclusion_ = sum;
    } else if (std::abs(sum - inclusion_) > kEqTolerance) {
      throw InvalidArgument("inclusion probability differs across locations: " +
                            std::to_string(inclusion_) + " vs " + std::to_string(sum));
    }
  }
}

double RandomSetDistribution::operator()(Subset s) const {
  require_within(s, ground_.size());
  return probabilities_[static_cast<Eigen::Index>(s.mask())];
}

double RandomSetDistribution::cooccurrence(int s, int t) const {
  const int m = ground_.size();
  check_location(s, m);
  check_location(t, m);
  if (inclusion_ <= 0.0) {
    throw DegenerateMarginal("inclusion probability is zero; conditioning is undefined");
  }
  const SubsetMask both = Subset::singleton(s).mask() | Subset::singleton(t).mask();
  double joint = 0.0;
  for (Eigen::Index i = 1; i < probabilities_.size(); ++i) {
    if ((static_cast<SubsetMask>(i) & both) == both) joint += probabilities_[i];
  }
  return joint / inclusion_;
}

// ==== construction and recovery =============================================

TauTable build_tau(const EcfTable& table) {
  ValidationReport report = validate_ecf(table);
  if (!report.valid()) throw NotCompletelyAlternating(std::move(report));
  Eigen::ArrayXd weights = mobius_weights(table.values(), table.size());
  // validate_ecf guarantees weights >= -kEqTolerance; snap the slack to zero.
  weights = weights.max(0.0);
  return TauTable(table.ground(), std::move(weights));
}

double recover_theta(const TauTable& tau, Subset a) {
  require_within(a, tau.size());
  if (a.empty()) return 0.0;
  const Eigen::ArrayXd& w = tau.weights();
  double acc = 0.0;
  for (Eigen::Index i = 1; i < w.size(); ++i) {
    if (static_cast<SubsetMask>(i) & a.mask()) acc += w[i];
  }
  return acc;
}

EcfTable theta_from_tau(const TauTable& tau) {
  const int m = tau.size();
  // subset_sum[B] = total weight inside B, via a zeta transform.
  Eigen::ArrayXd subset_sum = tau.weights();
  for (int t = 0; t < m; ++t) {
    const SubsetMask bit = Subset::singleton(t).mask();
    for (Eigen::Index i = 0; i < subset_sum.size(); ++i) {
      if (static_cast<SubsetMask>(i) & bit) subset_sum[i] += subset_sum[i & ~bit];
    }
  }
  const SubsetMask full = tau.ground().full().mask();
  const double total = subset_sum[static_cast<Eigen::Index>(full)];
  Eigen::ArrayXd theta(subset_sum.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    theta[i] = total - subset_sum[static_cast<Eigen::Index>(full & ~static_cast<SubsetMask>(i))];
  }
  theta[0] = 0.0;
  return EcfTable(tau.ground(), std::move(theta));
}

TauTable marginalize(const TauTable& tau, Subset keep) {
  const int m = tau.size();
  require_within(keep, m);
  if (keep.empty()) throw InvalidArgument("cannot marginalize onto the empty set");

  const std::vector<int> kept = keep.indices();
  const int new_m = static_cast<int>(kept.size());

  // Position of each kept location in the compressed indexing.
  std::array<int, 32> position{};
  for (int i = 0; i < new_m; ++i) position[static_cast<std::size_t>(kept[static_cast<std::size_t>(i)])] = i;

  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(Eigen::Index{1} << new_m);
  const Eigen::ArrayXd& w = tau.weights();
  for (Eigen::Index i = 1; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const SubsetMask trace = static_cast<SubsetMask>(i) & keep.mask();
    if (trace == 0) continue;
    SubsetMask compressed = 0;
    for (SubsetMask rest = trace; rest != 0; rest &= rest - 1) {
      compressed |= SubsetMask{1} << position[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    out[static_cast<Eigen::Index>(compressed)] += w[i];
  }

  if (tau.ground().has_labels()) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(new_m));
    for (int t : kept) labels.push_back(tau.ground().labels()[static_cast<std::size_t>(t)]);
    return TauTable(GroundSet(new_m, std::move(labels)), std::move(out));
  }
  return TauTable(GroundSet(new_m), std::move(out));
}

// ==== distribution ===========================================================

double joint_cdf(const TauTable& tau, const Eigen::VectorXd& x) {
  const int m = tau.size();
  if (x.size() != m) throw InvalidArgument("coordinate vector has the wrong size");
  Eigen::ArrayXd inv(m);
  for (int t = 0; t < m; ++t) {
    if (std::isnan(x[t]) || x[t] <= 0.0) {
      throw InvalidArgument("coordinates must be positive (location " + std::to_string(t) + ")");
    }
    inv[t] = 1.0 / x[t];
  }
  return std::exp(-stable_tail_dependence(tau, inv.matrix()));
}

double stable_tail_dependence(const TauTable& tau, const Eigen::VectorXd& x) {
  const int m = tau.size();
  if (x.size() != m) throw InvalidArgument("coordinate vector has the wrong size");
  for (int t = 0; t < m; ++t) {
    if (std::isnan(x[t]) || x[t] < 0.0) {
      throw InvalidArgument("coordinates must be nonnegative (location " + std::to_string(t) + ")");
    }
  }
  const Eigen::ArrayXd& w = tau.weights();
  double acc = 0.0;
  for (Eigen::Index i = 1; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    double peak = 0.0;
    for (SubsetMask rest = static_cast<SubsetMask>(i); rest != 0; rest &= rest - 1) {
      peak = std::max(peak, x[std::countr_zero(rest)]);
    }
    acc += w[i] * peak;
  }
  return acc;
}

BivariateSummary bivariate(const TauTable& tau, int s, int t) {
  const int m = tau.size();
  check_location(s, m);
  check_location(t, m);
  if (s == t) return BivariateSummary::from_chi(1.0);
  const SubsetMask both = Subset::singleton(s).mask() | Subset::singleton(t).mask();
  const Eigen::ArrayXd& w = tau.weights();
  double chi = 0.0;
  for (Eigen::Index i = 1; i < w.size(); ++i) {
    if ((static_cast<SubsetMask>(i) & both) == both) chi += w[i];
  }
  return BivariateSummary::from_chi(chi);
}

SpectralAtoms spectral_atoms(const TauTable& tau, NormKind norm) {
  SpectralAtoms out;
  out.norm = norm;
  const int m = tau.size();
  for (Subset s : tau.support()) {
    const double scale = subset_norm(s.count(), norm);
    SpectralAtom atom;
    atom.weight = tau(s) * scale;
    atom.point = Eigen::VectorXd::Zero(m);
    for (int t : s.indices()) atom.point[t] = 1.0 / scale;
    out.atoms.push_back(std::move(atom));
  }
  return out;
}

// ==== simulation =============================================================

std::string tau_digest(const TauTable& tau) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  auto feed = [&hash](const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      hash ^= bytes[i];
      hash *= 0x100000001b3ull;
    }
  };
  const std::uint32_t m = static_cast<std::uint32_t>(tau.size());
  feed(&m, sizeof m);
  for (const std::string& label : tau.ground().labels()) {
    feed(label.data(), label.size());
    feed("\0", 1);
  }
  const Eigen::ArrayXd& w = tau.weights();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    std::uint64_t bits = 0;
    static_assert(sizeof bits == sizeof(double));
    std::memcpy(&bits, &w[i], sizeof bits);
    feed(&bits, sizeof bits);
  }

  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

SampleBatch simulate(const TauTable& tau, std::int64_t replicates, std::uint64_t seed) {
  if (replicates < 1) throw InvalidArgument("need at least one replicate");
  const int m = tau.size();

  struct Source {
    SubsetMask mask;
    double weight;
  };
  std::vector<Source> sources;
  const Eigen::ArrayXd& w = tau.weights();
  for (Eigen::Index i = 1; i < w.size(); ++i) {
    if (w[i] > 0.0) sources.push_back({static_cast<SubsetMask>(i), w[i]});
  }

  SampleBatch batch{tau.ground(), Eigen::MatrixXd::Zero(replicates, m), seed, tau_digest(tau)};
  for (std::int64_t i = 0; i < replicates; ++i) {
    for (const Source& src : sources) {
      const double v = src.weight * counter_frechet(seed, static_cast<std::uint64_t>(i), src.mask);
      for (SubsetMask rest = src.mask; rest != 0; rest &= rest - 1) {
        double& cell = batch.values(i, std::countr_zero(rest));
        cell = std::max(cell, v);
      }
    }
  }
  return batch;
}

// ==== random-set view ========================================================

RandomSetDistribution binary_realization(const EcfTable& table, std::optional<double> bound) {
  const TauTable tau = build_tau(table);
  const double total = recover_theta(tau, tau.ground().full());
  const double cap = bound.value_or(total);
  if (cap < total - 1e-12) {
    throw BoundTooSmall("bound " + std::to_string(cap) + " is below the full-set coefficient " +
                        std::to_string(total));
  }

  Eigen::ArrayXd q = tau.weights() / cap;
  q[0] = 0.0;
  q[0] = std::max(0.0, 1.0 - q.sum());
  return RandomSetDistribution(table.ground(), std::move(q));
}

std::vector<Subset> sample_sets(const RandomSetDistribution& dist, std::int64_t n,
                                std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("need at least one draw");
  const Eigen::ArrayXd& q = dist.probabilities();
  std::vector<double> cumulative(static_cast<std::size_t>(q.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    acc += q[i];
    cumulative[static_cast<std::size_t>(i)] = acc;
  }
  cumulative.back() = 1.0;

  std::vector<Subset> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = counter_uniform(seed, static_cast<std::uint64_t>(i), 0);
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    out.push_back(Subset(static_cast<SubsetMask>(it - cumulative.begin())));
  }
  return out;
}

EcfTable max_combine(const EcfTable& a, const EcfTable& b, double alpha) {
  if (!(a.ground() == b.ground())) throw InvalidArgument("tables live on different ground sets");
  if (std::isnan(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw InvalidArgument("mixing weight must lie in [0, 1]");
  }
  ValidationReport ra = validate_ecf(a);
  if (!ra.valid()) throw NotCompletelyAlternating(std::move(ra));
  ValidationReport rb = validate_ecf(b);
  if (!rb.valid()) throw NotCompletelyAlternating(std::move(rb));
  return EcfTable(a.ground(), alpha * a.values() + (1.0 - alpha) * b.values());
}

RandomSetDistribution product_chi(const RandomSetDistribution& a,
                                  const RandomSetDistribution& b) {
  if (!(a.ground() == b.ground())) {
    throw InvalidArgument("distributions live on different ground sets");
  }
  if (a.size() > 12) throw TooLarge("product of random sets is capped at 12 locations");
  if (a.inclusion_probability() <= 0.0 || b.inclusion_probability() <= 0.0) {
    throw DegenerateMarginal("product requires positive inclusion probabilities");
  }

  const Eigen::ArrayXd& qa = a.probabilities();
  const Eigen::ArrayXd& qb = b.probabilities();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(qa.size());
  for (Eigen::Index i = 0; i < qa.size(); ++i) {
    if (qa[i] == 0.0) continue;
    for (Eigen::Index j = 0; j < qb.size(); ++j) {
      if (qb[j] == 0.0) continue;
      out[static_cast<Eigen::Index>(static_cast<SubsetMask>(i) & static_cast<SubsetMask>(j))] +=
          qa[i] * qb[j];
    }
  }
  return RandomSetDistribution(a.ground(), std::move(out));
}

}  // namespace excoef
