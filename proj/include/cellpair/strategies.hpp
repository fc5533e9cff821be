#pragma once

// The seven interaction strategies, executed block by block against the
// simulated device. Every strategy computes, for each particle, the sum of
// pair contributions from all other particles in its 27-cell neighborhood and
// reports the memory traffic its algorithm would generate.

#include "cellpair/binning.hpp"
#include "cellpair/core.hpp"
#include "cellpair/gpumodel.hpp"
#include "cellpair/kernels.hpp"
#include "cellpair/prefixsum.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cellpair {

enum class Strategy {
  par_part_noloop,
  par_part_loop,
  par_cell,
  par_cell_sm,
  all_in_sm,
  xpencil,
  xpencil_reg,
};

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);
std::vector<Strategy> all_strategies();

/// Particles sorted by cell together with their binning.
struct Scene {
  GridSpec grid;
  ParticleSet<float> sorted;
  CellBinning binning;

  [[nodiscard]] std::size_t size() const { return sorted.size(); }
};

Scene make_scene(const ParticleSet<float>& particles, const GridSpec& grid);

template <typename Scalar>
struct Outputs {
  Column<Scalar> fx, fy, fz, pot;

  Outputs() = default;
  explicit Outputs(std::size_t n) {
    const auto rows = static_cast<Eigen::Index>(n);
    fx.setZero(rows);
    fy.setZero(rows);
    fz.setZero(rows);
    pot.setZero(rows);
  }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(pot.size()); }

  friend bool operator==(const Outputs& a, const Outputs& b) {
    return a.size() == b.size() && (a.fx == b.fx).all() && (a.fy == b.fy).all() &&
           (a.fz == b.fz).all() && (a.pot == b.pot).all();
  }
};

struct StrategyResult {
  Outputs<float> outputs;  // original particle order
  TrafficCounters counters;
  LaunchConfig launch;
  std::vector<TrafficCounters> block_counters;
  std::vector<std::int64_t> writer_block;  // per sorted slot; -1 if never written
  std::vector<std::int64_t> write_count;   // per sorted slot
};

/// A strategy whose launch constraints cannot be met for this scene.
struct Unavailable {
  std::string reason;
};

using StrategyOutcome = std::variant<StrategyResult, Unavailable>;

/// Launch knobs; unset fields take the defaults of each strategy.
struct StrategyOptions {
  std::optional<std::int64_t> blocks;   // par_part_loop, par_cell, par_cell_sm
  std::optional<int> threads;           // par_part_loop, par_cell, par_cell_sm
  std::optional<int> pencil_interior;   // xpencil
  std::optional<Index3> reg_target;     // xpencil_reg
};

inline constexpr int kParticleThreads = 128;
inline constexpr int kCellThreads = 128;
inline constexpr int kCellSmSlots = 512;

StrategyOutcome run_par_part_noloop(const Scene& scene, const KernelSpec& kernel,
                                    const DeviceProfile& profile);
StrategyOutcome run_par_part_loop(const Scene& scene, const KernelSpec& kernel,
                                  const DeviceProfile& profile, const StrategyOptions& opts = {});
StrategyOutcome run_par_cell(const Scene& scene, const KernelSpec& kernel,
                             const DeviceProfile& profile, const StrategyOptions& opts = {});
StrategyOutcome run_par_cell_sm(const Scene& scene, const KernelSpec& kernel,
                                const DeviceProfile& profile, const StrategyOptions& opts = {});
StrategyOutcome run_all_in_sm(const Scene& scene, const KernelSpec& kernel,
                              const DeviceProfile& profile);
StrategyOutcome run_xpencil(const Scene& scene, const KernelSpec& kernel,
                            const DeviceProfile& profile, const StrategyOptions& opts = {});
StrategyOutcome run_xpencil_reg(const Scene& scene, const KernelSpec& kernel,
                                const DeviceProfile& profile, const StrategyOptions& opts = {});

StrategyOutcome run_strategy(Strategy s, const Scene& scene, const KernelSpec& kernel,
                             const DeviceProfile& profile, const StrategyOptions& opts = {});

/// Shared-memory bookkeeping for one All-in-SM sub-box.
///
/// Box cells are numbered X-fastest inside the box. local_offsets[k] is where
/// box cell k starts in the shared buffer; shared_to_global[s] is the sorted
/// global slot of shared slot s.
struct LocalOffsets {
  CellBox box;
  std::vector<std::int64_t> global_offsets;  // per box cell
  std::vector<std::int64_t> counts;          // per box cell
  std::vector<std::int64_t> pencil_counts;   // per (y, z) row of the box
  std::vector<std::int64_t> exclusions;      // scanned, per row
  std::vector<std::int64_t> local_offsets;   // per box cell
  std::vector<std::int64_t> shared_to_global;
  ScanStats scan;

  [[nodiscard]] int box_cell(const CellCoord& c) const {
    return (c.x - box.lo[0]) + box.extent(0) * ((c.y - box.lo[1]) + box.extent(1) * (c.z - box.lo[2]));
  }
};

/// Builds local offsets from the global prefix: per-row particle counts, the
/// corner offset plus inter-row gaps scanned with the block scan, and
/// local = global - exclusion of the row.
LocalOffsets build_local_offsets(const CellBox& box, const CellBinning& binning,
                                 const GridSpec& grid, int scan_threads = 1);

}  // namespace cellpair
