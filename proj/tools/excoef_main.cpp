// Command-line front end: every subcommand reads/writes the stable file
// formats, prints one machine-readable JSON document on stdout and keeps
// logs on stderr. Exit codes: 0 success / validation pass, 1 validation
// failure, 2 usage or I/O error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "excoef/depset.hpp"
#include "excoef/estimate.hpp"
#include "excoef/io.hpp"
#include "excoef/maxlinear.hpp"
#include "excoef/stationary.hpp"
#include "excoef/transform.hpp"

namespace {

using excoef::io::json;

void print_document(const json& document) {
  const std::string text = excoef::io::dump_canonical(document);
  std::fwrite(text.data(), 1, text.size(), stdout);
}

// ==== shared pieces ==========================================================

excoef::TauTable validated_tau(const excoef::EcfTable& table) {
  return excoef::build_tau(table);  // throws NotCompletelyAlternating when invalid
}

json bivariate_to_json(const excoef::BivariateSummary& summary) {
  json out;
  out["theta"] = summary.theta_pair;
  out["chi"] = summary.chi;
  out["eta"] = summary.eta;
  return out;
}

json estimate_to_json(const excoef::EstimateResult& result) {
  json out;
  out["point"] = result.point;
  out["std_error"] = result.std_error;
  out["replicates"] = result.replicates;
  out["method"] = result.method;
  return out;
}

json triangle_to_json(const excoef::TriangleReport& report) {
  json out = excoef::io::report_to_json(report.report);
  out["checked"] = report.checked;
  out["exhaustive"] = report.exhaustive;
  return out;
}

double chi_gram_min_eigenvalue(const excoef::TauTable& tau) {
  const int m = tau.size();
  Eigen::MatrixXd gram(m, m);
  for (int s = 0; s < m; ++s) {
    for (int t = 0; t < m; ++t) gram(s, t) = excoef::bivariate(tau, s, t).chi;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// Empirical quantile of one column (sorted-order statistic at ceil(q n)).
double column_quantile(const excoef::SampleBatch& batch, int column, double level) {
  std::vector<double> values(static_cast<std::size_t>(batch.replicates()));
  for (std::int64_t i = 0; i < batch.replicates(); ++i) {
    values[static_cast<std::size_t>(i)] = batch.values(i, column);
  }
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  std::size_t index = static_cast<std::size_t>(std::ceil(level * n));
  if (index > values.size()) index = values.size();
  if (index < 1) index = 1;
  return values[index - 1];
}

// ==== window / lag parsing ===================================================

// "0..9" per axis, axes joined by ','; expands to the product of the ranges.
std::vector<excoef::Cell> parse_window(const std::string& text, int& dim) {
  std::vector<std::pair<long, long>> ranges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string axis =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t dots = axis.find("..");
    try {
      if (axis.empty()) throw std::invalid_argument("empty axis");
      std::size_t used = 0;
      long lo = 0;
      long hi = 0;
      if (dots == std::string::npos) {
        lo = hi = std::stol(axis, &used);
        if (used != axis.size()) throw std::invalid_argument(axis);
      } else {
        lo = std::stol(axis.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument(axis);
        const std::string upper = axis.substr(dots + 2);
        hi = std::stol(upper, &used);
        if (used != upper.size()) throw std::invalid_argument(axis);
      }
      if (lo < 0 || hi < lo) {
        throw excoef::InvalidArgument("window axis \"" + axis + "\" must satisfy 0 <= lo <= hi");
      }
      ranges.emplace_back(lo, hi);
    } catch (const std::invalid_argument&) {
      throw excoef::InvalidArgument("malformed window axis \"" + axis + "\"");
    } catch (const std::out_of_range&) {
      throw excoef::InvalidArgument("window axis \"" + axis + "\" is out of range");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  dim = static_cast<int>(ranges.size());

  std::vector<excoef::Cell> cells{{}};
  for (const auto& [lo, hi] : ranges) {
    std::vector<excoef::Cell> next;
    for (const excoef::Cell& prefix : cells) {
      for (long v = lo; v <= hi; ++v) {
        excoef::Cell cell = prefix;
        cell.push_back(v);
        next.push_back(std::move(cell));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

excoef::Cell parse_lag(const std::string& text, int dim) {
  excoef::Cell lag;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      lag.push_back(std::stol(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw excoef::InvalidArgument("malformed lag \"" + text + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(lag.size()) != dim) {
    throw excoef::InvalidArgument("lag lists " + std::to_string(lag.size()) +
                                  " coordinates, shape has " + std::to_string(dim));
  }
  return lag;
}

excoef::StormModel storm_from_files(const std::string& shape_path,
                                    const std::vector<excoef::Cell>& window, int window_dim) {
  const auto [dim, shape] = excoef::io::load_shape(shape_path);
  if (window_dim != dim) {
    throw excoef::InvalidArgument("window has " + std::to_string(window_dim) +
                                  " axes, shape file declares d=" + std::to_string(dim));
  }
  std::vector<long> extent(static_cast<std::size_t>(dim), 1);
  for (const excoef::Cell& cell : window) {
    for (int k = 0; k < dim; ++k) {
      extent[static_cast<std::size_t>(k)] =
          std::max(extent[static_cast<std::size_t>(k)], cell[static_cast<std::size_t>(k)] + 1);
    }
  }
  excoef::GridSpec grid(dim, std::move(extent), std::vector<double>(static_cast<std::size_t>(dim), 1.0));
  return excoef::StormModel(std::move(grid), shape);
}

// ==== subcommand bodies ======================================================

int run_validate(const std::string& ecf_path) {
  const excoef::EcfTable table = excoef::io::load_ecf(ecf_path);
  const excoef::ValidationReport report = excoef::validate_ecf(table);
  print_document(excoef::io::report_to_json(report));
  return report.valid() ? 0 : 1;
}

int run_tau(const std::string& ecf_path, const std::string& output) {
  const excoef::EcfTable table = excoef::io::load_ecf(ecf_path);
  const excoef::TauTable tau = validated_tau(table);
  excoef::io::save_tau(tau, output);
  json out;
  out["m"] = tau.size();
  out["model_digest"] = excoef::tau_digest(tau);
  out["output"] = output;
  print_document(out);
  return 0;
}

int run_theta(const std::string& tau_path, const std::string& set_text, bool have_set) {
  const excoef::TauTable tau = excoef::io::load_tau(tau_path);
  if (have_set) {
    const excoef::Subset set = excoef::parse_subset(set_text, tau.size());
    json out;
    out["set"] = excoef::format_subset(set);
    out["theta"] = excoef::recover_theta(tau, set);
    print_document(out);
  } else {
    print_document(excoef::io::ecf_to_json(excoef::theta_from_tau(tau)));
  }
  return 0;
}

int run_simulate(const std::string& tau_path, std::int64_t replicates, std::uint64_t seed,
                 const std::string& output) {
  const excoef::TauTable tau = excoef::io::load_tau(tau_path);
  const excoef::SampleBatch batch = excoef::simulate(tau, replicates, seed);
  excoef::io::save_samples_csv(batch, output);
  json out;
  out["model_digest"] = batch.model_digest;
  out["n"] = batch.replicates();
  out["output"] = output;
  out["seed"] = batch.seed;
  print_document(out);
  return 0;
}

int run_estimate(const std::string& samples_path, const std::string& set_text, bool have_set,
                 const std::vector<int>& chi_pair, double threshold_level) {
  const excoef::SampleBatch batch = excoef::io::load_samples_csv(samples_path);
  json out;
  out["n"] = batch.replicates();
  if (have_set) {
    const excoef::Subset set = excoef::parse_subset(set_text, batch.ground.size());
    json entry = estimate_to_json(excoef::estimate_theta(batch, set));
    entry["set"] = excoef::format_subset(set);
    out["theta"] = std::move(entry);
  }
  if (!chi_pair.empty()) {
    if (threshold_level <= 0.0 || threshold_level >= 1.0) {
      throw excoef::InvalidArgument("--threshold must be a quantile level in (0, 1)");
    }
    const double threshold = column_quantile(batch, chi_pair[1], threshold_level);
    json entry = estimate_to_json(excoef::estimate_chi(batch, chi_pair[0], chi_pair[1], threshold));
    entry["s"] = chi_pair[0];
    entry["t"] = chi_pair[1];
    entry["threshold"] = threshold;
    entry["threshold_level"] = threshold_level;
    out["chi"] = std::move(entry);
  }
  print_document(out);
  return 0;
}

int run_depset(const std::string& ecf_path, bool want_vertices, const std::string& face_text,
               bool have_face) {
  const excoef::EcfTable table = excoef::io::load_ecf(ecf_path);
  const excoef::DependencyPolytope polytope = excoef::build_polytope(table);

  json out;
  out["m"] = table.size();
  json halfspaces = json::array();
  for (const excoef::Halfspace& h : polytope.halfspaces()) {
    json entry;
    entry["set"] = excoef::format_subset(h.set);
    entry["bound"] = h.bound;
    halfspaces.push_back(std::move(entry));
  }
  out["halfspaces"] = std::move(halfspaces);

  if (want_vertices) {
    const excoef::VertexSet verts = excoef::vertices(polytope);
    json list = json::array();
    for (const Eigen::VectorXd& v : verts) {
      json point = json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) point.push_back(v[i]);
      list.push_back(std::move(point));
    }
    out["vertices"] = std::move(list);
  }

  if (have_face) {
    const excoef::Subset face = excoef::parse_subset(face_text, table.size());
    const Eigen::VectorXd touch = excoef::face_touch_check(table, face);
    json entry;
    entry["set"] = excoef::format_subset(face);
    json point = json::array();
    double value = 0.0;
    for (Eigen::Index i = 0; i < touch.size(); ++i) {
      point.push_back(touch[i]);
      if (face.contains(static_cast<int>(i))) value += touch[i];
    }
    entry["point"] = std::move(point);
    entry["value"] = value;
    entry["theta"] = table(face);
    out["face_check"] = std::move(entry);
  }

  print_document(out);
  return 0;
}

int run_transform(const std::string& ecf_path, const std::string& bernstein_text,
                  const std::string& output) {
  const excoef::EcfTable table = excoef::io::load_ecf(ecf_path);
  const excoef::BernsteinSpec spec = excoef::io::bernstein_from_json(
      excoef::io::parse_json(bernstein_text, "--bernstein"));
  const excoef::EcfTable transformed = excoef::transform_ecf(table, spec);
  excoef::io::save_ecf(transformed, output);
  json out;
  out["bernstein"] = excoef::io::bernstein_to_json(spec);
  out["output"] = output;
  out["validation"] = excoef::io::report_to_json(excoef::validate_ecf(transformed));
  print_document(out);
  return 0;
}

int run_check_triangle(const std::string& ecf_path, const std::string& bernstein_text) {
  const excoef::EcfTable table = excoef::io::load_ecf(ecf_path);
  const excoef::BernsteinSpec spec =
      bernstein_text.empty()
          ? excoef::BernsteinSpec::linear(0.0, 1.0)
          : excoef::io::bernstein_from_json(excoef::io::parse_json(bernstein_text, "--bernstein"));

  json out;
  out["bernstein"] = excoef::io::bernstein_to_json(spec);
  const excoef::TriangleReport theta_report = excoef::triangle_check_theta(table, spec);
  out["theta_triangle"] = triangle_to_json(theta_report);

  bool eta_clean = true;
  const excoef::ValidationReport validation = excoef::validate_ecf(table);
  if (validation.valid()) {
    const excoef::TriangleReport eta_report =
        excoef::triangle_check_eta(excoef::build_tau(table), spec);
    out["eta_triangle"] = triangle_to_json(eta_report);
    eta_clean = eta_report.valid();
  } else {
    out["eta_triangle"] = nullptr;  // undefined without a valid weight table
  }
  print_document(out);
  return (theta_report.valid() && eta_clean) ? 0 : 1;
}

int run_storm(const std::string& shape_path, const std::string& window_text,
              std::int64_t replicates, std::uint64_t seed, const std::string& samples_out,
              const std::string& tau_out) {
  int dim = 0;
  const std::vector<excoef::Cell> window = parse_window(window_text, dim);
  const excoef::StormModel model = storm_from_files(shape_path, window, dim);
  const excoef::TauTable tau = excoef::storm_tau(model, window);

  json out;
  out["m"] = tau.size();
  out["shape_cells"] = static_cast<std::int64_t>(model.shape().size());
  out["model_digest"] = excoef::tau_digest(tau);
  out["theta_window"] = excoef::recover_theta(tau, tau.ground().full());
  if (!tau_out.empty()) {
    excoef::io::save_tau(tau, tau_out);
    out["tau_output"] = tau_out;
  }
  if (replicates > 0) {
    if (samples_out.empty()) {
      throw excoef::InvalidArgument("simulation requested (-n > 0) but no -o output path");
    }
    const excoef::SampleBatch batch = excoef::simulate(tau, replicates, seed);
    excoef::io::save_samples_csv(batch, samples_out);
    out["n"] = batch.replicates();
    out["seed"] = batch.seed;
    out["samples_output"] = samples_out;
  }
  print_document(out);
  return 0;
}

int run_storm_chi(const std::string& shape_path, const std::string& lag_text) {
  const auto [dim, shape] = excoef::io::load_shape(shape_path);
  excoef::GridSpec grid(dim, std::vector<long>(static_cast<std::size_t>(dim), 1),
                        std::vector<double>(static_cast<std::size_t>(dim), 1.0));
  const excoef::StormModel model(std::move(grid), shape);
  const excoef::Cell lag = parse_lag(lag_text, dim);
  json out;
  out["lag"] = lag_text;
  out["chi"] = excoef::storm_chi(model, lag);
  print_document(out);
  return 0;
}

int run_report(const std::string& ecf_path, std::int64_t replicates, std::uint64_t seed) {
  const excoef::EcfTable table = excoef::io::load_ecf(ecf_path);
  const int m = table.size();

  json out;
  out["m"] = m;
  out["seed"] = seed;
  const excoef::ValidationReport validation = excoef::validate_ecf(table);
  out["validation"] = excoef::io::report_to_json(validation);
  if (!validation.valid()) {
    print_document(out);
    return 1;
  }

  const excoef::TauTable tau = excoef::build_tau(table);
  out["model_digest"] = excoef::tau_digest(tau);
  out["theta_full_set"] = excoef::recover_theta(tau, tau.ground().full());
  if (m <= 10) {
    out["theta"] = excoef::io::ecf_to_json(table)["theta"];
    out["tau"] = excoef::io::tau_to_json(tau)["tau"];
  }

  json pairs = json::object();
  for (int s = 0; s < m; ++s) {
    for (int t = s + 1; t < m; ++t) {
      pairs[std::to_string(s) + "," + std::to_string(t)] =
          bivariate_to_json(excoef::bivariate(tau, s, t));
    }
  }
  out["bivariate"] = std::move(pairs);
  out["chi_gram_min_eigenvalue"] = chi_gram_min_eigenvalue(tau);

  if (m <= 10) {
    const excoef::SpectralAtoms atoms = excoef::spectral_atoms(tau, excoef::NormKind::Max);
    json list = json::array();
    for (const excoef::SpectralAtom& atom : atoms.atoms) {
      json entry;
      entry["weight"] = atom.weight;
      json point = json::array();
      for (Eigen::Index i = 0; i < atom.point.size(); ++i) point.push_back(atom.point[i]);
      entry["point"] = std::move(point);
      list.push_back(std::move(entry));
    }
    json spectral;
    spectral["norm"] = std::string(excoef::to_string(excoef::NormKind::Max));
    spectral["atoms"] = std::move(list);
    out["spectral"] = std::move(spectral);
  }

  if (m <= 5) {
    const excoef::VertexSet verts = excoef::vertices(excoef::build_polytope(table));
    json list = json::array();
    for (const Eigen::VectorXd& v : verts) {
      json point = json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) point.push_back(v[i]);
      list.push_back(std::move(point));
    }
    json polytope;
    polytope["vertex_count"] = static_cast<std::int64_t>(verts.size());
    polytope["vertices"] = std::move(list);
    out["polytope"] = std::move(polytope);
  }

  const std::vector<std::pair<std::string, excoef::BernsteinSpec>> catalog = {
      {"identity", excoef::BernsteinSpec::linear(0.0, 1.0)},
      {"power_0.5", excoef::BernsteinSpec::power(0.5)},
      {"log1p", excoef::BernsteinSpec::log1p()},
  };
  json triangles = json::object();
  json transforms = json::object();
  for (const auto& [name, spec] : catalog) {
    json entry;
    entry["theta"] = triangle_to_json(excoef::triangle_check_theta(table, spec));
    entry["eta"] = triangle_to_json(excoef::triangle_check_eta(tau, spec));
    triangles[name] = std::move(entry);
    transforms[name] =
        excoef::io::report_to_json(excoef::validate_ecf(excoef::transform_ecf(table, spec)));
  }
  out["triangle"] = std::move(triangles);
  out["transform_closure"] = std::move(transforms);

  if (replicates > 0) {
    const excoef::SampleBatch batch = excoef::simulate(tau, replicates, seed);
    json sim;
    sim["n"] = batch.replicates();

    json theta_hat = json::object();
    std::vector<excoef::Subset> sets;
    for (int t = 0; t < m; ++t) sets.push_back(excoef::Subset::singleton(t));
    if (m <= 6) {
      for (int s = 0; s < m; ++s) {
        for (int t = s + 1; t < m; ++t) {
          sets.push_back(excoef::Subset::singleton(s) | excoef::Subset::singleton(t));
        }
      }
    }
    if (m >= 2) sets.push_back(table.ground().full());
    for (excoef::Subset set : sets) {
      json entry = estimate_to_json(excoef::estimate_theta(batch, set));
      entry["exact"] = excoef::recover_theta(tau, set);
      theta_hat[excoef::format_subset(set)] = std::move(entry);
    }
    sim["theta_hat"] = std::move(theta_hat);

    if (m >= 2) {
      const double eta = excoef::bivariate(tau, 0, 1).eta;
      const std::vector<double> epsilons = {0.25, 0.5, 1.0, 2.0, 4.0};
      const excoef::ContinuityBoundReport bound =
          excoef::check_continuity_bound(batch, 0, 1, eta, epsilons);
      json rows = json::array();
      for (const excoef::BoundCheckRow& row : bound.rows) {
        json entry;
        entry["epsilon"] = row.epsilon;
        entry["empirical"] = row.empirical;
        entry["std_error"] = row.std_error;
        entry["exact_bound"] = row.exact_bound;
        entry["linear_bound"] = row.linear_bound;
        entry["within_bound"] = row.within_bound;
        rows.push_back(std::move(entry));
      }
      json continuity;
      continuity["eta"] = eta;
      continuity["rows"] = std::move(rows);
      continuity["all_within"] = bound.all_within();
      sim["continuity"] = std::move(continuity);

      std::vector<std::pair<double, double>> grid;
      for (double x : {0.5, 1.0, 2.0}) {
        for (double y : {0.5, 1.0, 2.0}) grid.emplace_back(x, y);
      }
      const excoef::BivariateCdfReport cdf = excoef::check_bivariate_cdf(batch, 0, 1, eta, grid);
      json rows2 = json::array();
      for (const excoef::CdfCheckRow& row : cdf.rows) {
        json entry;
        entry["x"] = row.x;
        entry["y"] = row.y;
        entry["empirical"] = row.empirical;
        entry["model"] = row.model;
        entry["abs_error"] = row.abs_error;
        entry["within_tol"] = row.within_tol;
        rows2.push_back(std::move(entry));
      }
      json cdf_json;
      cdf_json["eta"] = eta;
      cdf_json["tol"] = cdf.tol;
      cdf_json["rows"] = std::move(rows2);
      cdf_json["all_within"] = cdf.all_within();
      sim["bivariate_cdf"] = std::move(cdf_json);
    }
    out["simulation"] = std::move(sim);
  }

  print_document(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremal coefficient toolkit: validation, max-linear models, simulation"};
  app.require_subcommand(1);

  // validate
  std::string validate_ecf_path;
  auto* validate_cmd = app.add_subcommand("validate", "validate an extremal coefficient table");
  validate_cmd->add_option("ecf", validate_ecf_path, "table JSON file")->required();

  // tau
  std::string tau_ecf_path;
  std::string tau_output;
  auto* tau_cmd = app.add_subcommand("tau", "derive max-linear weights from a table");
  tau_cmd->add_option("ecf", tau_ecf_path, "table JSON file")->required();
  tau_cmd->add_option("-o,--output", tau_output, "weight JSON output path")->required();

  // theta
  std::string theta_tau_path;
  std::string theta_set;
  auto* theta_cmd = app.add_subcommand("theta", "recover coefficients from weights");
  theta_cmd->add_option("--tau", theta_tau_path, "weight JSON file")->required();
  auto* theta_set_opt = theta_cmd->add_option("--set", theta_set, "subset, e.g. 0,1,2");

  // simulate
  std::string sim_tau_path;
  std::string sim_output;
  std::int64_t sim_n = 1000;
  std::uint64_t sim_seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "simulate the max-linear field");
  sim_cmd->add_option("--tau", sim_tau_path, "weight JSON file")->required();
  sim_cmd->add_option("-n,--replicates", sim_n, "replicate count")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("-o,--output", sim_output, "CSV output path")->required();

  // estimate
  std::string est_samples;
  std::string est_set;
  std::vector<int> est_chi;
  double est_threshold = 0.95;
  auto* est_cmd = app.add_subcommand("estimate", "estimate dependence from samples");
  est_cmd->add_option("--samples", est_samples, "CSV sample file")->required();
  auto* est_set_opt = est_cmd->add_option("--set", est_set, "subset for a coefficient estimate");
  est_cmd->add_option("--chi", est_chi, "location pair s t")->expected(2);
  est_cmd->add_option("--threshold", est_threshold,
                      "quantile level of the conditioning coordinate (default 0.95)");

  // depset
  std::string dep_ecf_path;
  std::string dep_face;
  bool dep_vertices = false;
  auto* dep_cmd = app.add_subcommand("depset", "dependency polytope of a table");
  dep_cmd->add_option("ecf", dep_ecf_path, "table JSON file")->required();
  dep_cmd->add_flag("--vertices", dep_vertices, "enumerate vertices (m <= 5)");
  auto* dep_face_opt = dep_cmd->add_option("--check-face", dep_face, "subset whose face to touch");

  // transform
  std::string tr_ecf_path;
  std::string tr_bernstein;
  std::string tr_output;
  auto* tr_cmd = app.add_subcommand("transform", "push a table through a Bernstein function");
  tr_cmd->add_option("ecf", tr_ecf_path, "table JSON file")->required();
  tr_cmd->add_option("--bernstein", tr_bernstein, "spec JSON, e.g. {\"kind\":\"power\",\"q\":0.5}")
      ->required();
  tr_cmd->add_option("-o,--output", tr_output, "output table path")->required();

  // check-triangle
  std::string ct_ecf_path;
  std::string ct_bernstein;
  auto* ct_cmd = app.add_subcommand("check-triangle", "triangle inequalities through a transform");
  ct_cmd->add_option("ecf", ct_ecf_path, "table JSON file")->required();
  ct_cmd->add_option("--bernstein", ct_bernstein, "spec JSON (default: identity)");

  // storm
  std::string storm_shape;
  std::string storm_window;
  std::string storm_samples;
  std::string storm_tau_out;
  std::int64_t storm_n = 0;
  std::uint64_t storm_seed = 0;
  auto* storm_cmd = app.add_subcommand("storm", "grid storm model on a window");
  storm_cmd->add_option("--shape", storm_shape, "shape JSON file")->required();
  storm_cmd->add_option("--window", storm_window, "cell ranges, e.g. 0..9 or 0..4,0..4")->required();
  storm_cmd->add_option("-n,--replicates", storm_n, "replicate count (0 = no simulation)");
  storm_cmd->add_option("--seed", storm_seed, "RNG seed");
  storm_cmd->add_option("-o,--output", storm_samples, "CSV output path");
  storm_cmd->add_option("--tau-out", storm_tau_out, "write the window weight table here");

  // storm-chi
  std::string schi_shape;
  std::string schi_lag;
  auto* schi_cmd = app.add_subcommand("storm-chi", "pair tail dependence of a storm shape");
  schi_cmd->add_option("--shape", schi_shape, "shape JSON file")->required();
  schi_cmd->add_option("--lag", schi_lag, "lag vector, e.g. 1 or 1,0")->required();

  // report
  std::string rep_ecf_path;
  std::int64_t rep_n = 10000;
  std::uint64_t rep_seed = 0;
  auto* rep_cmd = app.add_subcommand("report", "bundle all checks for one table");
  rep_cmd->add_option("ecf", rep_ecf_path, "table JSON file")->required();
  rep_cmd->add_option("-n,--replicates", rep_n, "simulation replicate count (0 = skip)");
  rep_cmd->add_option("--seed", rep_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return run_validate(validate_ecf_path);
    if (*tau_cmd) return run_tau(tau_ecf_path, tau_output);
    if (*theta_cmd) return run_theta(theta_tau_path, theta_set, theta_set_opt->count() > 0);
    if (*sim_cmd) return run_simulate(sim_tau_path, sim_n, sim_seed, sim_output);
    if (*est_cmd) {
      if (est_set_opt->count() == 0 && est_chi.empty()) {
        throw excoef::InvalidArgument("estimate needs --set and/or --chi");
      }
      return run_estimate(est_samples, est_set, est_set_opt->count() > 0, est_chi, est_threshold);
    }
    if (*dep_cmd) return run_depset(dep_ecf_path, dep_vertices, dep_face, dep_face_opt->count() > 0);
    if (*tr_cmd) return run_transform(tr_ecf_path, tr_bernstein, tr_output);
    if (*ct_cmd) return run_check_triangle(ct_ecf_path, ct_bernstein);
    if (*storm_cmd) {
      return run_storm(storm_shape, storm_window, storm_n, storm_seed, storm_samples,
                       storm_tau_out);
    }
    if (*schi_cmd) return run_storm_chi(schi_shape, schi_lag);
    if (*rep_cmd) return run_report(rep_ecf_path, rep_n, rep_seed);
  } catch (const excoef::NotCompletelyAlternating& err) {
    print_document(excoef::io::report_to_json(err.report));
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  } catch (const excoef::Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 2;
}
