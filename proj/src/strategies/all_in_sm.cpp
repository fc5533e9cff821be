// Full load: every block stages its whole sub-box (targets plus one ghost
// layer) in shared memory once, then computes the interior targets from it.

#include "detail.hpp"

#include "cellpair/launchcfg.hpp"

namespace cellpair {

using namespace detail;

StrategyOutcome run_all_in_sm(const Scene& scene, const KernelSpec& kernel,
                              const DeviceProfile& profile) {
  check_kernel_fits(scene, kernel);
  const auto& grid = scene.grid;
  const auto& bin = scene.binning;

  const auto cfg = configure_all_in_sm(profile, bin.max_per_cell, grid.dims);
  if (!cfg) {
    return Unavailable{"sub-box smaller than 27 cells: M_C = " + std::to_string(bin.max_per_cell) +
                       " leaves room for " +
                       std::to_string(max_cells_in_shared(profile.shared_mem_per_block,
                                                          bin.max_per_cell,
                                                          profile.bytes_per_particle)) +
                       " cells"};
  }
  const std::int64_t box_cells =
      static_cast<std::int64_t>(cfg->box_dims[0]) * cfg->box_dims[1] * cfg->box_dims[2];
  LaunchConfig launch{cfg->blocks, cfg->threads, box_cells * cfg->bytes_per_cell, *cfg};
  launch.validate(profile);

  const Index3 interior = cfg->interior_dims;
  const Index3 nblk{static_cast<int>(ceil_div(grid.dims[0], interior[0])),
                    static_cast<int>(ceil_div(grid.dims[1], interior[1])),
                    static_cast<int>(ceil_div(grid.dims[2], interior[2]))};
  const int threads = cfg->threads;

  SortedOutputs sorted(scene.size());
  std::vector<TrafficCounters> counters(static_cast<std::size_t>(cfg->blocks));

  for_each_block(cfg->blocks, [&](std::int64_t b) {
    TrafficCounters& c = counters[static_cast<std::size_t>(b)];
    const int bx = static_cast<int>(b % nblk[0]);
    const int by = static_cast<int>((b / nblk[0]) % nblk[1]);
    const int bz = static_cast<int>(b / (static_cast<std::int64_t>(nblk[0]) * nblk[1]));
    CellBox targets_box;
    const Index3 bidx{bx, by, bz};
    for (int a = 0; a < 3; ++a) {
      targets_box.lo[a] = bidx[a] * interior[a];
      targets_box.hi[a] = std::min(grid.dims[a], targets_box.lo[a] + interior[a]);
    }
    const CellBox staged = targets_box.with_halo(grid);

    const LocalOffsets lo = build_local_offsets(staged, bin, grid, threads);
    c.sync_count += 1 + lo.scan.sync_count + 1;

    SharedBuffer sm;
    for (std::int64_t g : lo.shared_to_global) sm.push(scene.sorted, g);
    const std::int64_t staged_count = sm.size();
    c.global_particle_loads += staged_count;
    c.shared_stores += staged_count;
    c.global_transactions += strided_copy_transactions(lo.shared_to_global, threads, profile.warp_size,
                                                       profile.transaction_bytes);
    ++c.sync_count;

    // Interior targets in box order; thread t takes targets t, t + threads, ...
    struct Work {
      std::int64_t shared_index;
      CellCoord cell;
    };
    std::vector<Work> work;
    for (int z = targets_box.lo[2]; z < targets_box.hi[2]; ++z)
      for (int y = targets_box.lo[1]; y < targets_box.hi[1]; ++y)
        for (int x = targets_box.lo[0]; x < targets_box.hi[0]; ++x) {
          const CellCoord cc{x, y, z};
          const auto k = static_cast<std::size_t>(lo.box_cell(cc));
          for (std::int64_t s = 0; s < lo.counts[k]; ++s) work.push_back({lo.local_offsets[k] + s, cc});
        }

    const RecordView view = sm.view();
    const auto total = static_cast<std::int64_t>(work.size());
    for (std::int64_t round = 0; round < total; round += threads) {
      const std::int64_t active = std::min<std::int64_t>(threads, total - round);
      std::int64_t trip = 0;
      for (std::int64_t l = 0; l < active; ++l) {
        const Work& w = work[static_cast<std::size_t>(round + l)];
        const auto si = static_cast<std::size_t>(w.shared_index);
        const Target t{{sm.x[si], sm.y[si], sm.z[si]}, sm.param[si], sm.gid[si]};
        ++c.shared_loads;
        Accum acc;
        std::int64_t lane_trip = 0;
        for (const CellCoord& nc : neighbor_cells(w.cell, grid)) {
          const auto k = static_cast<std::size_t>(lo.box_cell(nc));
          const std::int64_t begin = lo.local_offsets[k];
          const std::int64_t done = interact(acc, t, view, begin, begin + lo.counts[k], kernel);
          c.interactions += done;
          c.shared_loads += done;
          lane_trip += lo.counts[k];
        }
        trip = std::max(trip, lane_trip);
        sorted.store(t.slot, b, acc);
        ++c.global_particle_stores;
      }
      c.idle_lane_iterations += (threads - active) * trip;
    }
  });

  return finish(scene, std::move(sorted), std::move(counters), launch);
}

}  // namespace cellpair
