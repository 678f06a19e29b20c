#include "excoef/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace excoef::io {

namespace {

void indent_to(std::string& out, int indent, int depth) {
  out.append(static_cast<std::size_t>(indent) * static_cast<std::size_t>(depth), ' ');
}

void dump_value(const json& value, std::string& out, int indent, int depth) {
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        indent_to(out, indent, depth + 1);
        out += json(key).dump();
        out += ": ";
        dump_value(item, out, indent, depth + 1);
      }
      out += '\n';
      indent_to(out, indent, depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ",\n";
        first = false;
        indent_to(out, indent, depth + 1);
        dump_value(item, out, indent, depth + 1);
      }
      out += '\n';
      indent_to(out, indent, depth);
      out += ']';
      return;
    }
    case json::value_t::string:
      out += value.dump();
      return;
    case json::value_t::boolean:
      out += value.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(value.get<std::int64_t>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(value.get<std::uint64_t>());
      return;
    case json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    case json::value_t::null:
      out += "null";
      return;
    default:
      throw InvalidArgument("cannot serialize this JSON value type");
  }
}

double require_number(const json& value, const std::string& key) {
  if (!value.is_number()) throw InvalidArgument("key \"" + key + "\" must be a number");
  const double out = value.get<double>();
  if (!std::isfinite(out)) throw InvalidArgument("key \"" + key + "\" must be finite");
  return out;
}

// Common loader for the theta/tau table layout.
struct TableFile {
  GroundSet ground;
  Eigen::ArrayXd values;
};

TableFile load_table_file(const std::string& path, const std::string& value_key) {
  const json doc = parse_json(read_file(path), path);
  if (!doc.is_object()) throw InvalidArgument(path + ": top level must be an object");
  for (const auto& [key, item] : doc.items()) {
    (void)item;
    if (key != "m" && key != "labels" && key != value_key) {
      throw InvalidArgument(path + ": unexpected key \"" + key + "\"");
    }
  }

  if (!doc.contains("m") || !doc["m"].is_number_integer()) {
    throw InvalidArgument(path + ": key \"m\" must be an integer");
  }
  const std::int64_t m64 = doc["m"].get<std::int64_t>();
  if (m64 < 1 || m64 > ground_set_cap()) {
    throw InvalidArgument(path + ": key \"m\" must be in [1, " +
                          std::to_string(ground_set_cap()) + "]");
  }
  const int m = static_cast<int>(m64);

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw InvalidArgument(path + ": key \"labels\" must be an array");
    for (const auto& item : doc["labels"]) {
      if (!item.is_string()) throw InvalidArgument(path + ": labels must be strings");
      labels.push_back(item.get<std::string>());
    }
  }
  GroundSet ground = labels.empty() ? GroundSet(m) : GroundSet(m, std::move(labels));

  if (!doc.contains(value_key) || !doc[value_key].is_object()) {
    throw InvalidArgument(path + ": key \"" + value_key + "\" must be an object");
  }

  const std::size_t table = ground.table_size();
  Eigen::ArrayXd values = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(table));
  std::vector<bool> seen(table, false);
  seen[0] = true;
  for (const auto& [key, item] : doc[value_key].items()) {
    Subset set;
    try {
      set = parse_subset(key, m);
    } catch (const InvalidSubset& err) {
      throw InvalidArgument(path + ": bad subset key \"" + key + "\": " + err.what());
    }
    if (set.empty()) {
      throw InvalidArgument(path + ": the empty-set key \"\" is implied and must not appear");
    }
    if (format_subset(set) != key) {
      throw InvalidArgument(path + ": subset key \"" + key + "\" is not in canonical form \"" +
                            format_subset(set) + "\"");
    }
    values[static_cast<Eigen::Index>(set.mask())] = require_number(item, key);
    seen[set.mask()] = true;
  }
  for (std::size_t i = 1; i < table; ++i) {
    if (!seen[i]) {
      throw InvalidArgument(path + ": missing subset key \"" +
                            format_subset(Subset(static_cast<SubsetMask>(i))) + "\"");
    }
  }
  return {std::move(ground), std::move(values)};
}

json table_to_json(const GroundSet& ground, const Eigen::ArrayXd& values,
                   const std::string& value_key) {
  json doc;
  doc["m"] = ground.size();
  if (ground.has_labels()) doc["labels"] = ground.labels();
  json body = json::object();
  for (SubsetMask set = 1; set < ground.table_size(); ++set) {
    body[format_subset(Subset(set))] = values[static_cast<Eigen::Index>(set)];
  }
  doc[value_key] = std::move(body);
  return doc;
}

std::string sidecar_path(const std::string& path) { return path + ".meta.json"; }

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("cannot serialize a non-finite number");
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string dump_canonical(const json& document, int indent) {
  std::string out;
  dump_value(document, out, indent, 0);
  out += '\n';
  return out;
}

EcfTable load_ecf(const std::string& path) {
  TableFile file = load_table_file(path, "theta");
  file.values[0] = 0.0;
  return EcfTable(std::move(file.ground), std::move(file.values));
}

json ecf_to_json(const EcfTable& table) {
  return table_to_json(table.ground(), table.values(), "theta");
}

void save_ecf(const EcfTable& table, const std::string& path) {
  write_file(path, dump_canonical(ecf_to_json(table)));
}

TauTable load_tau(const std::string& path) {
  TableFile file = load_table_file(path, "tau");
  return TauTable(std::move(file.ground), std::move(file.values));
}

json tau_to_json(const TauTable& tau) {
  return table_to_json(tau.ground(), tau.weights(), "tau");
}

void save_tau(const TauTable& tau, const std::string& path) {
  write_file(path, dump_canonical(tau_to_json(tau)));
}

void save_samples_csv(const SampleBatch& batch, const std::string& path) {
  std::string out;
  const int m = batch.ground.size();
  for (int t = 0; t < m; ++t) {
    const std::string label = batch.ground.label(t);
    if (label.find_first_of(",\"\n") != std::string::npos) {
      throw InvalidArgument("label \"" + label + "\" cannot be written to CSV");
    }
    if (t > 0) out += ',';
    out += label;
  }
  out += '\n';
  for (Eigen::Index i = 0; i < batch.values.rows(); ++i) {
    for (int t = 0; t < m; ++t) {
      if (t > 0) out += ',';
      out += format_double(batch.values(i, t));
    }
    out += '\n';
  }
  write_file(path, out);

  json meta;
  meta["model_digest"] = batch.model_digest;
  meta["n"] = batch.values.rows();
  meta["seed"] = batch.seed;
  write_file(sidecar_path(path), dump_canonical(meta));
}

SampleBatch load_samples_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument(path + ": empty file");

  std::vector<std::string> labels;
  {
    std::istringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) labels.push_back(field);
    if (!line.empty() && line.back() == ',') labels.push_back("");
  }
  if (labels.empty()) throw InvalidArgument(path + ": header row has no columns");
  const int m = static_cast<int>(labels.size());

  std::vector<double> entries;
  std::int64_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    int columns = 0;
    while (std::getline(row, field, ',')) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(field, &used);
      } catch (const std::exception&) {
        throw InvalidArgument(path + ": row " + std::to_string(rows + 2) +
                              " has a malformed number \"" + field + "\"");
      }
      if (used != field.size() || !std::isfinite(value) || value <= 0.0) {
        throw InvalidArgument(path + ": row " + std::to_string(rows + 2) +
                              " needs strictly positive finite entries, got \"" + field + "\"");
      }
      entries.push_back(value);
      ++columns;
    }
    if (columns != m) {
      throw InvalidArgument(path + ": row " + std::to_string(rows + 2) + " has " +
                            std::to_string(columns) + " columns, expected " + std::to_string(m));
    }
    ++rows;
  }
  if (rows == 0) throw InvalidArgument(path + ": no replicate rows");

  SampleBatch batch{GroundSet(m, std::move(labels)), Eigen::MatrixXd(rows, m), 0, ""};
  for (std::int64_t i = 0; i < rows; ++i) {
    for (int t = 0; t < m; ++t) {
      batch.values(i, t) = entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                                   static_cast<std::size_t>(t)];
    }
  }

  const std::string meta_path = sidecar_path(path);
  if (std::filesystem::exists(meta_path)) {
    const json meta = parse_json(read_file(meta_path), meta_path);
    if (meta.contains("seed")) batch.seed = meta["seed"].get<std::uint64_t>();
    if (meta.contains("model_digest")) batch.model_digest = meta["model_digest"].get<std::string>();
    if (meta.contains("n") && meta["n"].get<std::int64_t>() != rows) {
      throw InvalidArgument(path + ": sidecar lists " + std::to_string(meta["n"].get<std::int64_t>()) +
                            " replicates but the file has " + std::to_string(rows));
    }
  }
  return batch;
}

BernsteinSpec bernstein_from_json(const json& value) {
  if (!value.is_object() || !value.contains("kind") || !value["kind"].is_string()) {
    throw InvalidArgument("Bernstein spec must be an object with a \"kind\" string");
  }
  const std::string kind = value["kind"].get<std::string>();
  auto reject_unknown = [&value, &kind](std::initializer_list<const char*> allowed) {
    for (const auto& [key, item] : value.items()) {
      (void)item;
      if (key == "kind") continue;
      bool ok = false;
      for (const char* name : allowed) ok = ok || key == name;
      if (!ok) throw InvalidArgument("unexpected key \"" + key + "\" in " + kind + " spec");
    }
  };

  if (kind == "linear") {
    reject_unknown({"c", "b"});
    const double c = value.contains("c") ? require_number(value["c"], "c") : 0.0;
    const double b = value.contains("b") ? require_number(value["b"], "b") : 1.0;
    return BernsteinSpec::linear(c, b);
  }
  if (kind == "power") {
    reject_unknown({"q"});
    if (!value.contains("q")) throw InvalidArgument("power spec needs key \"q\"");
    return BernsteinSpec::power(require_number(value["q"], "q"));
  }
  if (kind == "log1p") {
    reject_unknown({});
    return BernsteinSpec::log1p();
  }
  if (kind == "exp_mixture") {
    reject_unknown({"c", "b", "atoms"});
    const double c = value.contains("c") ? require_number(value["c"], "c") : 0.0;
    const double b = value.contains("b") ? require_number(value["b"], "b") : 0.0;
    std::vector<ExpAtom> atoms;
    if (value.contains("atoms")) {
      if (!value["atoms"].is_array()) throw InvalidArgument("key \"atoms\" must be an array");
      for (const auto& atom : value["atoms"]) {
        if (!atom.is_object() || !atom.contains("w") || !atom.contains("lambda")) {
          throw InvalidArgument("each atom needs keys \"w\" and \"lambda\"");
        }
        atoms.push_back({require_number(atom["w"], "w"), require_number(atom["lambda"], "lambda")});
      }
    }
    return BernsteinSpec::exp_mixture(c, b, std::move(atoms));
  }
  if (kind == "shifted_power") {
    reject_unknown({"e"});
    if (!value.contains("e")) throw InvalidArgument("shifted_power spec needs key \"e\"");
    return BernsteinSpec::shifted_power(require_number(value["e"], "e"));
  }
  throw InvalidArgument("unknown Bernstein kind \"" + kind + "\"");
}

json bernstein_to_json(const BernsteinSpec& spec) {
  json out;
  switch (spec.kind()) {
    case BernsteinSpec::Kind::Linear:
      out["kind"] = "linear";
      out["c"] = spec.offset();
      out["b"] = spec.slope();
      break;
    case BernsteinSpec::Kind::Power:
      out["kind"] = "power";
      out["q"] = spec.exponent();
      break;
    case BernsteinSpec::Kind::Log1p:
      out["kind"] = "log1p";
      break;
    case BernsteinSpec::Kind::ExpMixture: {
      out["kind"] = "exp_mixture";
      out["c"] = spec.offset();
      out["b"] = spec.slope();
      json atoms = json::array();
      for (const ExpAtom& atom : spec.atoms()) {
        atoms.push_back(json{{"w", atom.weight}, {"lambda", atom.rate}});
      }
      out["atoms"] = std::move(atoms);
      break;
    }
    case BernsteinSpec::Kind::ShiftedPower:
      out["kind"] = "shifted_power";
      out["e"] = spec.exponent();
      break;
  }
  return out;
}

std::pair<int, std::vector<Cell>> load_shape(const std::string& path) {
  const json doc = parse_json(read_file(path), path);
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("cells")) {
    throw InvalidArgument(path + ": shape file needs keys \"d\" and \"cells\"");
  }
  for (const auto& [key, item] : doc.items()) {
    (void)item;
    if (key != "d" && key != "cells") throw InvalidArgument(path + ": unexpected key \"" + key + "\"");
  }
  if (!doc["d"].is_number_integer() || doc["d"].get<std::int64_t>() < 1) {
    throw InvalidArgument(path + ": key \"d\" must be a positive integer");
  }
  const int d = static_cast<int>(doc["d"].get<std::int64_t>());
  if (!doc["cells"].is_array() || doc["cells"].empty()) {
    throw InvalidArgument(path + ": key \"cells\" must be a non-empty array");
  }
  std::vector<Cell> cells;
  for (const auto& cell : doc["cells"]) {
    if (!cell.is_array() || static_cast<int>(cell.size()) != d) {
      throw InvalidArgument(path + ": every cell must list " + std::to_string(d) + " coordinates");
    }
    Cell out;
    for (const auto& coord : cell) {
      if (!coord.is_number_integer()) {
        throw InvalidArgument(path + ": cell coordinates must be integers");
      }
      out.push_back(coord.get<long>());
    }
    cells.push_back(std::move(out));
  }
  return {d, std::move(cells)};
}

json violation_to_json(const Violation& violation) {
  json out;
  out["kind"] = std::string(to_string(violation.kind));
  out["subset"] = format_subset(violation.subset);
  out["value"] = violation.value;
  return out;
}

json report_to_json(const ValidationReport& report) {
  json out;
  out["valid"] = report.valid();
  json list = json::array();
  for (const Violation& violation : report.violations) list.push_back(violation_to_json(violation));
  out["violations"] = std::move(list);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw InvalidArgument("error while reading: " + path);
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << content;
  out.flush();
  if (!out) throw InvalidArgument("error while writing: " + path);
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw InvalidArgument(source + ": malformed JSON: " + err.what());
  }
}

}  // namespace excoef::io
