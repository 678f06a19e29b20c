#include "excoef/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace excoef {

namespace {

void check_cell_dim(const Cell& cell, int dim, const char* what) {
  if (static_cast<int>(cell.size()) != dim) {
    throw InvalidArgument(std::string(what) + " has " + std::to_string(cell.size()) +
                          " coordinates, expected " + std::to_string(dim));
  }
}

std::string cell_label(const Cell& cell) {
  std::string out;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i > 0) out += '_';
    out += std::to_string(cell[i]);
  }
  return out;
}

Cell cell_minus(const Cell& a, const Cell& b) {
  Cell out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Cell cell_plus(const Cell& a, const Cell& b) {
  Cell out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// Window cells validated, deduplicated and ordered lexicographically.
std::vector<Cell> canonical_window(const std::vector<Cell>& window, const GridSpec& grid) {
  if (window.empty()) throw InvalidArgument("window must contain at least one cell");
  std::set<Cell> cells;
  for (const Cell& cell : window) {
    check_cell_dim(cell, grid.dim, "window cell");
    if (!grid.inside(cell)) {
      throw InvalidArgument("window cell " + cell_label(cell) + " outside the grid extent");
    }
    cells.insert(cell);
  }
  return {cells.begin(), cells.end()};
}

GroundSet window_ground(const std::vector<Cell>& cells) {
  std::vector<std::string> labels;
  labels.reserve(cells.size());
  for (const Cell& cell : cells) labels.push_back(cell_label(cell));
  return GroundSet(static_cast<int>(cells.size()), std::move(labels));
}

}  // namespace

GridSpec::GridSpec(int dim, std::vector<long> extent, std::vector<double> spacing)
    : dim(dim), extent(std::move(extent)), spacing(std::move(spacing)) {
  if (dim < 1) throw InvalidArgument("grid dimension must be at least 1");
  if (static_cast<int>(this->extent.size()) != dim ||
      static_cast<int>(this->spacing.size()) != dim) {
    throw InvalidArgument("extent and spacing must list one entry per dimension");
  }
  for (long e : this->extent) {
    if (e < 1) throw InvalidArgument("grid extent entries must be at least 1");
  }
  for (double s : this->spacing) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("grid spacing must be positive");
  }
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (double s : spacing) v *= s;
  return v;
}

bool GridSpec::inside(const Cell& cell) const {
  if (static_cast<int>(cell.size()) != dim) return false;
  for (int k = 0; k < dim; ++k) {
    if (cell[static_cast<std::size_t>(k)] < 0 ||
        cell[static_cast<std::size_t>(k)] >= extent[static_cast<std::size_t>(k)]) {
      return false;
    }
  }
  return true;
}

StormModel::StormModel(GridSpec grid, std::vector<Cell> shape) : grid_(std::move(grid)) {
  if (shape.empty()) throw InvalidArgument("storm shape must contain at least one cell");
  std::set<Cell> cells;
  for (const Cell& cell : shape) {
    check_cell_dim(cell, grid_.dim, "shape cell");
    cells.insert(cell);
  }
  shape_.assign(cells.begin(), cells.end());
}

double StormModel::intensity_mass() const {
  return static_cast<double>(shape_.size()) * grid_.cell_volume();
}

TauTable storm_tau(const StormModel& model, const std::vector<Cell>& window) {
  const std::vector<Cell> cells = canonical_window(window, model.grid());
  const int m = static_cast<int>(cells.size());
  if (m > ground_set_cap()) {
    throw TooLarge("window of " + std::to_string(cells.size()) + " cells exceeds the ground cap");
  }

  std::map<Cell, int> index;
  for (int i = 0; i < m; ++i) index[cells[static_cast<std::size_t>(i)]] = i;

  // Candidate storm origins: every lattice point that covers some window
  // cell, i.e. {w - a : w in window, a in shape}. Integer cover counts per
  // covered subset keep the weights exact multiples of 1/|shape|.
  std::set<Cell> sources;
  for (const Cell& w : cells) {
    for (const Cell& a : model.shape()) sources.insert(cell_minus(w, a));
  }

  std::map<SubsetMask, long> cover_count;
  for (const Cell& source : sources) {
    SubsetMask covered = 0;
    for (const Cell& a : model.shape()) {
      const auto it = index.find(cell_plus(source, a));
      if (it != index.end()) covered |= SubsetMask{1} << it->second;
    }
    if (covered != 0) ++cover_count[covered];
  }

  const double shape_size = static_cast<double>(model.shape().size());
  Eigen::ArrayXd weights = Eigen::ArrayXd::Zero(Eigen::Index{1} << m);
  for (const auto& [mask, count] : cover_count) {
    weights[static_cast<Eigen::Index>(mask)] = static_cast<double>(count) / shape_size;
  }
  return TauTable(window_ground(cells), std::move(weights));
}

double storm_chi(const StormModel& model, const Cell& lag) {
  check_cell_dim(lag, model.grid().dim, "lag");
  const std::set<Cell> shape(model.shape().begin(), model.shape().end());
  long overlap = 0;
  for (const Cell& a : model.shape()) {
    if (shape.count(cell_minus(a, lag)) > 0) ++overlap;
  }
  return static_cast<double>(overlap) / static_cast<double>(model.shape().size());
}

SampleBatch storm_simulate(const StormModel& model, const std::vector<Cell>& window,
                           std::int64_t replicates, std::uint64_t seed) {
  return simulate(storm_tau(model, window), replicates, seed);
}

TranslationReport is_translation_invariant(const EcfTable& table,
                                           const std::vector<Cell>& window,
                                           const std::vector<Cell>& shifts) {
  const std::vector<Cell> cells = [&] {
    if (window.empty()) throw InvalidArgument("window must contain at least one cell");
    std::set<Cell> sorted;
    int dim = static_cast<int>(window.front().size());
    if (dim < 1) throw InvalidArgument("window cells need at least one coordinate");
    for (const Cell& cell : window) {
      check_cell_dim(cell, dim, "window cell");
      sorted.insert(cell);
    }
    return std::vector<Cell>(sorted.begin(), sorted.end());
  }();

  const int m = static_cast<int>(cells.size());
  if (m != table.size()) {
    throw InvalidArgument("window lists " + std::to_string(cells.size()) +
                          " cells but the table covers " + std::to_string(table.size()));
  }

  std::map<Cell, int> index;
  for (int i = 0; i < m; ++i) index[cells[static_cast<std::size_t>(i)]] = i;

  TranslationReport out;
  const SubsetMask full = table.ground().full().mask();
  for (const Cell& shift : shifts) {
    check_cell_dim(shift, static_cast<int>(cells.front().size()), "shift");

    // Shifted location of each window cell, or -1 when it leaves the window.
    std::vector<int> moved(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
      const auto it = index.find(cell_plus(cells[static_cast<std::size_t>(i)], shift));
      if (it != index.end()) moved[static_cast<std::size_t>(i)] = it->second;
    }

    for (SubsetMask set = 1; set <= full; ++set) {
      SubsetMask shifted = 0;
      bool stays = true;
      for (SubsetMask rest = set; rest != 0 && stays; rest &= rest - 1) {
        const int target = moved[static_cast<std::size_t>(std::countr_zero(rest))];
        if (target < 0) {
          stays = false;
        } else {
          shifted |= SubsetMask{1} << target;
        }
      }
      if (!stays) {
        ++out.skipped;
        continue;
      }
      ++out.checked;
      const double gap = table(Subset(set)) - table(Subset(shifted));
      if (std::abs(gap) > kEqTolerance) {
        out.violations.push_back({ViolationKind::Translation, Subset(set), gap});
      }
    }
  }
  return out;
}

}  // namespace excoef
