#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "excoef/maxlinear.hpp"
#include "excoef/stationary.hpp"
#include "excoef/transform.hpp"

namespace excoef::io {

using nlohmann::json;

/// Shortest text that parses back to exactly this double (up to 17
/// significant digits).
std::string format_double(double value);

/// Deterministic serialization: keys in lexicographic order (the parser
/// already stores them sorted), floating-point numbers through
/// format_double, two-space indentation. Non-finite numbers throw.
std::string dump_canonical(const json& document, int indent = 2);

// ==== tables =================================================================

/// {"m": 3, "labels": [...]?, "theta": {"0": 1.0, ..., "0,1,2": 2.0}}
/// The empty subset is implied and must not appear; all other subsets are
/// required. Structural problems throw InvalidArgument naming the key.
EcfTable load_ecf(const std::string& path);
json ecf_to_json(const EcfTable& table);
void save_ecf(const EcfTable& table, const std::string& path);

/// Same layout with key "tau".
TauTable load_tau(const std::string& path);
json tau_to_json(const TauTable& tau);
void save_tau(const TauTable& tau, const std::string& path);

// ==== samples ================================================================

/// CSV with a header row of location labels and one replicate per row,
/// written with full precision; a sidecar <path>.meta.json carries
/// {"n", "seed", "model_digest"}.
void save_samples_csv(const SampleBatch& batch, const std::string& path);

/// Loads the CSV (entries must be strictly positive) and the sidecar when
/// present; otherwise seed 0 and an empty digest.
SampleBatch load_samples_csv(const std::string& path);

// ==== misc ===================================================================

/// {"kind": "power", "q": 0.5} and friends.
BernsteinSpec bernstein_from_json(const json& value);
json bernstein_to_json(const BernsteinSpec& spec);

/// Shape file {"d": 1, "cells": [[0], [1], [2]]}; returns dimension + cells.
std::pair<int, std::vector<Cell>> load_shape(const std::string& path);

json report_to_json(const ValidationReport& report);
json violation_to_json(const Violation& violation);

/// Reads a whole file; throws InvalidArgument when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Parses text as JSON, wrapping parse errors in InvalidArgument with the
/// source name.
json parse_json(const std::string& text, const std::string& source);

}  // namespace excoef::io
