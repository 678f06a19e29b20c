#pragma once

#include <cstdint>
#include <vector>

#include "excoef/maxlinear.hpp"

namespace excoef {

/// Integer grid cell; one coordinate per grid dimension.
using Cell = std::vector<long>;

/// Regular grid: extent (cells per axis) and spacing (cell width per axis).
struct GridSpec {
  int dim = 1;
  std::vector<long> extent;
  std::vector<double> spacing;

  GridSpec(int dim, std::vector<long> extent, std::vector<double> spacing);

  double cell_volume() const;
  bool inside(const Cell& cell) const;
};

/// Moving-storm model on a grid: storms of a fixed cell shape fall uniformly
/// over the integer lattice; the field at a cell is the largest storm
/// covering it.
class StormModel {
 public:
  StormModel(GridSpec grid, std::vector<Cell> shape);

  const GridSpec& grid() const { return grid_; }
  /// Shape offsets, deduplicated and lexicographically sorted.
  const std::vector<Cell>& shape() const { return shape_; }
  /// Mean measure of one storm: shape size times cell volume.
  double intensity_mass() const;

 private:
  GridSpec grid_;
  std::vector<Cell> shape_;
};

/// Weight table of the model restricted to a window of grid cells (within
/// the grid extent): one source per lattice point that can reach the window,
/// weight 1/|shape| on the subset of window cells it covers. Window cells are
/// ordered lexicographically and labelled by their coordinates joined with
/// '_'.
TauTable storm_tau(const StormModel& model, const std::vector<Cell>& window);

/// Pair tail dependence at lag h: |shape overlap with its h-shift| / |shape|.
/// Exactly zero once the shift exceeds the shape diameter.
double storm_chi(const StormModel& model, const Cell& lag);

/// Simulation of the window field, storm_tau followed by simulate.
SampleBatch storm_simulate(const StormModel& model, const std::vector<Cell>& window,
                           std::int64_t replicates, std::uint64_t seed);

struct TranslationReport {
  std::vector<Violation> violations;
  std::int64_t checked = 0;
  std::int64_t skipped = 0;  // (subset, shift) pairs leaving the window

  bool valid() const { return violations.empty(); }
};

/// Checks that the table value of every non-empty subset of window cells is
/// unchanged under each shift, wherever the shifted subset stays inside the
/// window; table entry order must match the lexicographic window order.
TranslationReport is_translation_invariant(const EcfTable& table,
                                           const std::vector<Cell>& window,
                                           const std::vector<Cell>& shifts);

}  // namespace excoef
