// One block per cell. Par-Cell reads sources from global memory (the block's
// lanes read the same record at the same time, so each source is one
// broadcast load per target chunk); Par-Cell-SM stages each neighbor cell in
// blockDim-sized chunks through shared memory.

#include "detail.hpp"

namespace cellpair {

namespace {

using namespace detail;

struct CellLaunch {
  std::int64_t blocks;
  int threads;
};

CellLaunch cell_launch(const Scene& scene, const StrategyOptions& opts) {
  const int threads = opts.threads.value_or(kCellThreads);
  const std::int64_t blocks =
      opts.blocks.value_or(static_cast<std::int64_t>(scene.grid.cell_count()));
  if (blocks < 1 || threads < 1) throw ConfigError("cell-parallel launch needs blocks and threads");
  return {blocks, threads};
}

std::int64_t active_warps(std::int64_t active, int warp) { return ceil_div(active, warp); }

}  // namespace

StrategyOutcome run_par_cell(const Scene& scene, const KernelSpec& kernel,
                             const DeviceProfile& profile, const StrategyOptions& opts) {
  check_kernel_fits(scene, kernel);
  const auto [blocks, threads] = cell_launch(scene, opts);
  LaunchConfig launch{blocks, threads, 0, std::monostate{}};
  launch.validate(profile);

  const auto& grid = scene.grid;
  const auto& bin = scene.binning;
  const RecordView global = global_view(scene.sorted);
  const auto cells = static_cast<std::int64_t>(grid.cell_count());

  SortedOutputs sorted(scene.size());
  std::vector<TrafficCounters> counters(static_cast<std::size_t>(blocks));

  for_each_block(blocks, [&](std::int64_t b) {
    TrafficCounters& c = counters[static_cast<std::size_t>(b)];
    std::vector<std::int64_t> lane_slots;
    for (std::int64_t cell = b; cell < cells; cell += blocks) {
      const int ci = static_cast<int>(cell);
      const std::int64_t size = bin.count(ci);
      const auto neighbors = neighbor_cells(grid.coord(ci), grid);
      std::int64_t sources = 0;
      for (const CellCoord& nc : neighbors) sources += bin.count(grid.linear(nc));

      for (std::int64_t first = 0; first < size; first += threads) {
        const std::int64_t active = std::min<std::int64_t>(threads, size - first);
        lane_slots.clear();
        for (std::int64_t l = 0; l < active; ++l) {
          const std::int64_t slot = bin.begin(ci) + first + l;
          lane_slots.push_back(slot);
          const Target t = load_target(scene.sorted, slot);
          Accum acc;
          for (const CellCoord& nc : neighbors) {
            const int src = grid.linear(nc);
            c.interactions += interact(acc, t, global, bin.begin(src), bin.end(src), kernel);
          }
          sorted.store(slot, b, acc);
        }
        c.global_particle_loads += active + sources;
        c.global_particle_stores += active;
        c.global_transactions += warp_transactions(lane_slots, profile.warp_size, profile.transaction_bytes) +
                                 sources * active_warps(active, profile.warp_size);
        c.idle_lane_iterations += (threads - active) * sources;
      }
    }
  });

  return finish(scene, std::move(sorted), std::move(counters), launch);
}

StrategyOutcome run_par_cell_sm(const Scene& scene, const KernelSpec& kernel,
                                const DeviceProfile& profile, const StrategyOptions& opts) {
  check_kernel_fits(scene, kernel);
  const auto [blocks, threads] = cell_launch(scene, opts);
  const int chunk = std::min(threads, kCellSmSlots);
  LaunchConfig launch{blocks, threads,
                      static_cast<std::int64_t>(kCellSmSlots) * profile.bytes_per_particle,
                      std::monostate{}};
  launch.validate(profile);

  const auto& grid = scene.grid;
  const auto& bin = scene.binning;
  const auto cells = static_cast<std::int64_t>(grid.cell_count());

  SortedOutputs sorted(scene.size());
  std::vector<TrafficCounters> counters(static_cast<std::size_t>(blocks));

  for_each_block(blocks, [&](std::int64_t b) {
    TrafficCounters& c = counters[static_cast<std::size_t>(b)];
    SharedBuffer sm;
    std::vector<std::int64_t> lane_slots;
    std::vector<Target> targets;
    std::vector<Accum> acc;
    std::vector<std::int64_t> staged_slots;

    for (std::int64_t cell = b; cell < cells; cell += blocks) {
      const int ci = static_cast<int>(cell);
      const std::int64_t size = bin.count(ci);
      const auto neighbors = neighbor_cells(grid.coord(ci), grid);

      for (std::int64_t first = 0; first < size; first += threads) {
        const std::int64_t active = std::min<std::int64_t>(threads, size - first);
        targets.clear();
        lane_slots.clear();
        for (std::int64_t l = 0; l < active; ++l) {
          const std::int64_t slot = bin.begin(ci) + first + l;
          targets.push_back(load_target(scene.sorted, slot));
          lane_slots.push_back(slot);
        }
        acc.assign(static_cast<std::size_t>(active), Accum{});
        c.global_particle_loads += active;
        c.global_transactions += warp_transactions(lane_slots, profile.warp_size, profile.transaction_bytes);

        for (const CellCoord& nc : neighbors) {
          const int src = grid.linear(nc);
          for (std::int64_t s0 = bin.begin(src); s0 < bin.end(src); s0 += chunk) {
            const std::int64_t s1 = std::min<std::int64_t>(bin.end(src), s0 + chunk);
            sm.clear();
            staged_slots.clear();
            for (std::int64_t s = s0; s < s1; ++s) {
              sm.push(scene.sorted, s);
              staged_slots.push_back(s);
            }
            const std::int64_t m = s1 - s0;
            c.global_particle_loads += m;
            c.shared_stores += m;
            c.global_transactions += strided_copy_transactions(staged_slots, threads, profile.warp_size,
                                                               profile.transaction_bytes);
            ++c.sync_count;
            const RecordView view = sm.view();
            for (std::int64_t l = 0; l < active; ++l) {
              const std::int64_t done =
                  interact(acc[static_cast<std::size_t>(l)], targets[static_cast<std::size_t>(l)], view, 0, m, kernel);
              c.interactions += done;
              c.shared_loads += done;
            }
            c.idle_lane_iterations += (threads - active) * m;
            ++c.sync_count;
          }
        }
        for (std::int64_t l = 0; l < active; ++l) {
          sorted.store(targets[static_cast<std::size_t>(l)].slot, b, acc[static_cast<std::size_t>(l)]);
        }
        c.global_particle_stores += active;
      }
    }
  });

  return finish(scene, std::move(sorted), std::move(counters), launch);
}

}  // namespace cellpair
