#include "excoef/transform.hpp"

#include <cmath>

#include "excoef/rng.hpp"

namespace excoef {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw InvalidArgument(std::string(name) + " must be finite");
}

}  // namespace

BernsteinSpec BernsteinSpec::linear(double offset, double slope) {
  require_finite(offset, "offset");
  require_finite(slope, "slope");
  if (offset < 0.0 || slope < 0.0) throw InvalidArgument("linear spec needs offset, slope >= 0");
  BernsteinSpec spec;
  spec.kind_ = Kind::Linear;
  spec.offset_ = offset;
  spec.slope_ = slope;
  return spec;
}

BernsteinSpec BernsteinSpec::power(double exponent) {
  require_finite(exponent, "exponent");
  if (exponent <= 0.0 || exponent > 1.0) throw InvalidArgument("power exponent must be in (0, 1]");
  BernsteinSpec spec;
  spec.kind_ = Kind::Power;
  spec.exponent_ = exponent;
  return spec;
}

BernsteinSpec BernsteinSpec::log1p() {
  BernsteinSpec spec;
  spec.kind_ = Kind::Log1p;
  return spec;
}

BernsteinSpec BernsteinSpec::exp_mixture(double offset, double slope, std::vector<ExpAtom> atoms) {
  require_finite(offset, "offset");
  require_finite(slope, "slope");
  if (offset < 0.0 || slope < 0.0) throw InvalidArgument("mixture needs offset, slope >= 0");
  for (const ExpAtom& atom : atoms) {
    require_finite(atom.weight, "weight");
    require_finite(atom.rate, "rate");
    if (atom.weight <= 0.0 || atom.rate <= 0.0) {
      throw InvalidArgument("mixture atoms need positive weight and rate");
    }
  }
  BernsteinSpec spec;
  spec.kind_ = Kind::ExpMixture;
  spec.offset_ = offset;
  spec.slope_ = slope;
  spec.atoms_ = std::move(atoms);
  return spec;
}

BernsteinSpec BernsteinSpec::shifted_power(double exponent) {
  require_finite(exponent, "exponent");
  if (exponent == 0.0 || exponent >= 1.0) {
    throw InvalidArgument("shifted power exponent must be in (0, 1) or negative");
  }
  BernsteinSpec spec;
  spec.kind_ = Kind::ShiftedPower;
  spec.exponent_ = exponent;
  return spec;
}

bool BernsteinSpec::constant() const {
  switch (kind_) {
    case Kind::Linear: return slope_ == 0.0;
    case Kind::Power: return false;
    case Kind::Log1p: return false;
    case Kind::ExpMixture: return slope_ == 0.0 && atoms_.empty();
    case Kind::ShiftedPower: return false;
  }
  return true;
}

std::string BernsteinSpec::describe() const {
  switch (kind_) {
    case Kind::Linear:
      return "linear(" + std::to_string(offset_) + " + " + std::to_string(slope_) + " r)";
    case Kind::Power: return "power(q=" + std::to_string(exponent_) + ")";
    case Kind::Log1p: return "log1p";
    case Kind::ExpMixture:
      return "exp_mixture(" + std::to_string(atoms_.size()) + " atom(s))";
    case Kind::ShiftedPower: return "shifted_power(e=" + std::to_string(exponent_) + ")";
  }
  return "unknown";
}

double bernstein_eval(const BernsteinSpec& spec, double r) {
  if (std::isnan(r) || r < 0.0) throw InvalidArgument("argument must be nonnegative");
  switch (spec.kind()) {
    case BernsteinSpec::Kind::Linear: return spec.offset() + spec.slope() * r;
    case BernsteinSpec::Kind::Power: return std::pow(r, spec.exponent());
    case BernsteinSpec::Kind::Log1p: return std::log1p(r);
    case BernsteinSpec::Kind::ExpMixture: {
      double acc = spec.offset() + spec.slope() * r;
      for (const ExpAtom& atom : spec.atoms()) acc += atom.weight * -std::expm1(-atom.rate * r);
      return acc;
    }
    case BernsteinSpec::Kind::ShiftedPower: {
      const double e = spec.exponent();
      if (e > 0.0) return std::pow(1.0 + r, e) - 1.0;
      return 1.0 - std::pow(1.0 + r, e);
    }
  }
  throw InvalidArgument("unknown spec kind");
}

namespace {

// Normalized transform (g(r) - g(0)) / (g(1) - g(0)) with the degenerate
// denominator rejected once up front.
struct NormalizedTransform {
  const BernsteinSpec& spec;
  double at_zero;
  double scale;

  explicit NormalizedTransform(const BernsteinSpec& s) : spec(s), at_zero(0.0), scale(1.0) {
    if (s.constant()) throw DegenerateTransform("transform by a constant function is undefined");
    at_zero = bernstein_eval(s, 0.0);
    scale = bernstein_eval(s, 1.0) - at_zero;
    if (scale <= 0.0) throw DegenerateTransform("transform has no increase between 0 and 1");
  }

  double operator()(double r) const { return (bernstein_eval(spec, r) - at_zero) / scale; }
};

}  // namespace

EcfTable transform_ecf(const EcfTable& table, const BernsteinSpec& spec) {
  const NormalizedTransform transform(spec);
  ValidationReport report = validate_ecf(table);
  if (!report.valid()) throw NotCompletelyAlternating(std::move(report));

  const int m = table.size();
  Eigen::ArrayXd out(table.values().size());
  out[0] = 0.0;
  const SubsetMask full = table.ground().full().mask();
  for (SubsetMask set = 1; set <= full; ++set) {
    out[static_cast<Eigen::Index>(set)] =
        transform(std::max(0.0, table.values()[static_cast<Eigen::Index>(set)]));
  }
  // A valid input has unit singletons up to tolerance; pin them exactly so
  // repeated transforms cannot drift.
  for (int t = 0; t < m; ++t) {
    out[static_cast<Eigen::Index>(Subset::singleton(t).mask())] = 1.0;
  }
  return EcfTable(table.ground(), std::move(out));
}

TriangleReport triangle_check_theta(const EcfTable& table, const BernsteinSpec& spec,
                                    const TripleSampleSpec& sampling) {
  if (spec.constant()) throw DegenerateTransform("triangle check through a constant function");
  const SubsetMask full = table.ground().full().mask();

  // g(theta(L) - 1) per subset; the argument is clamped at 0 so that valid
  // tables sitting a rounding error below 1 stay inside the domain.
  Eigen::ArrayXd transformed(table.values().size());
  for (SubsetMask set = 1; set <= full; ++set) {
    transformed[static_cast<Eigen::Index>(set)] =
        bernstein_eval(spec, std::max(0.0, table.values()[static_cast<Eigen::Index>(set)] - 1.0));
  }

  TriangleReport out;
  const double count = static_cast<double>(full);
  const bool exhaustive =
      sampling.mode == TripleSampleSpec::Mode::Exhaustive ||
      (sampling.mode == TripleSampleSpec::Mode::Auto && count * count * count <= 1e6);
  out.exhaustive = exhaustive;

  auto check = [&](SubsetMask a, SubsetMask b, SubsetMask c) {
    const double lhs = transformed[static_cast<Eigen::Index>(a | b)];
    const double rhs = transformed[static_cast<Eigen::Index>(a | c)] +
                       transformed[static_cast<Eigen::Index>(c | b)];
    ++out.checked;
    if (lhs > rhs + kEqTolerance) {
      out.report.violations.push_back(
          {ViolationKind::Triangle, Subset(a | b | c), rhs - lhs});
    }
  };

  if (exhaustive) {
    for (SubsetMask a = 1; a <= full; ++a) {
      for (SubsetMask b = 1; b <= full; ++b) {
        for (SubsetMask c = 1; c <= full; ++c) check(a, b, c);
      }
    }
  } else {
    if (sampling.samples < 1) throw InvalidArgument("sample count must be positive");
    for (std::int64_t i = 0; i < sampling.samples; ++i) {
      const std::uint64_t r = static_cast<std::uint64_t>(i);
      const SubsetMask a = 1 + static_cast<SubsetMask>(counter_word(sampling.seed, r, 1) % full);
      const SubsetMask b = 1 + static_cast<SubsetMask>(counter_word(sampling.seed, r, 2) % full);
      const SubsetMask c = 1 + static_cast<SubsetMask>(counter_word(sampling.seed, r, 3) % full);
      check(a, b, c);
    }
  }
  return out;
}

TriangleReport triangle_check_eta(const TauTable& tau, const BernsteinSpec& spec) {
  if (spec.constant()) throw DegenerateTransform("triangle check through a constant function");
  const int m = tau.size();

  Eigen::MatrixXd transformed(m, m);
  for (int s = 0; s < m; ++s) {
    for (int t = 0; t < m; ++t) {
      transformed(s, t) = bernstein_eval(spec, std::max(0.0, bivariate(tau, s, t).eta));
    }
  }

  TriangleReport out;
  for (int s = 0; s < m; ++s) {
    for (int t = 0; t < m; ++t) {
      if (t == s) continue;
      for (int r = 0; r < m; ++r) {
        if (r == s || r == t) continue;
        const double lhs = transformed(s, t);
        const double rhs = transformed(s, r) + transformed(r, t);
        ++out.checked;
        if (lhs > rhs + kEqTolerance) {
          const Subset witness =
              Subset::singleton(s) | Subset::singleton(t) | Subset::singleton(r);
          out.report.violations.push_back({ViolationKind::Triangle, witness, rhs - lhs});
        }
      }
    }
  }
  return out;
}

}  // namespace excoef
