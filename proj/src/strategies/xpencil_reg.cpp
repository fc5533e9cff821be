// Register reuse: a block latches a whole box of target cells in registers and
// streams source X-pencils across the box's Y/Z extent plus one ghost layer.
// Records of a source pencil that lie inside the target box are copied from
// registers to shared memory instead of being reloaded from global memory.

#include "detail.hpp"

#include "cellpair/launchcfg.hpp"

namespace cellpair {

using namespace detail;

StrategyOutcome run_xpencil_reg(const Scene& scene, const KernelSpec& kernel,
                                const DeviceProfile& profile, const StrategyOptions& opts) {
  check_kernel_fits(scene, kernel);
  const auto& grid = scene.grid;
  const auto& bin = scene.binning;

  const auto cfg = configure_xpencil_reg(profile, bin.max_per_cell, grid.dims, opts.reg_target);
  if (!cfg) {
    return Unavailable{"register target box exceeds the thread cap or the pencil: M_C = " +
                       std::to_string(bin.max_per_cell)};
  }
  const int threads = cfg->threads;
  LaunchConfig launch{cfg->blocks, threads,
                      static_cast<std::int64_t>(cfg->pencil_total_len) *
                          std::max<std::int64_t>(1, bin.max_per_cell) * profile.bytes_per_particle,
                      *cfg};
  launch.validate(profile);

  const Index3 tdim = cfg->target_dims;
  const Index3 nblk{static_cast<int>(ceil_div(grid.dims[0], tdim[0])),
                    static_cast<int>(ceil_div(grid.dims[1], tdim[1])),
                    static_cast<int>(ceil_div(grid.dims[2], tdim[2]))};

  SortedOutputs sorted(scene.size());
  std::vector<TrafficCounters> counters(static_cast<std::size_t>(cfg->blocks));

  for_each_block(cfg->blocks, [&](std::int64_t b) {
    TrafficCounters& c = counters[static_cast<std::size_t>(b)];
    const Index3 bidx{static_cast<int>(b % nblk[0]), static_cast<int>((b / nblk[0]) % nblk[1]),
                      static_cast<int>(b / (static_cast<std::int64_t>(nblk[0]) * nblk[1]))};
    CellBox box;
    for (int a = 0; a < 3; ++a) {
      box.lo[a] = bidx[a] * tdim[a];
      box.hi[a] = std::min(grid.dims[a], box.lo[a] + tdim[a]);
    }
    const CellBox reach = box.with_halo(grid);
    const int xs0 = reach.lo[0];
    const int xs1 = reach.hi[0];

    // Targets in box order, one per thread.
    std::vector<Target> regs;
    std::vector<CellCoord> reg_cell;
    for (int z = box.lo[2]; z < box.hi[2]; ++z)
      for (int y = box.lo[1]; y < box.hi[1]; ++y)
        for (int x = box.lo[0]; x < box.hi[0]; ++x) {
          const int g = grid.linear(x, y, z);
          for (std::int64_t s = bin.begin(g); s < bin.end(g); ++s) {
            regs.push_back(load_target(scene.sorted, s));
            reg_cell.push_back({x, y, z});
          }
        }
    const auto nt = static_cast<std::int64_t>(regs.size());
    {
      std::vector<std::int64_t> slots;
      slots.reserve(regs.size());
      for (const Target& t : regs) slots.push_back(t.slot);
      c.global_particle_loads += nt;
      c.global_transactions += warp_transactions(slots, profile.warp_size, profile.transaction_bytes);
    }
    // First register of each (y, z) row of the box, for register -> shared copies.
    const int ty = box.extent(1);
    std::vector<std::int64_t> row_reg(static_cast<std::size_t>(ty * box.extent(2)));
    {
      std::int64_t r = 0;
      for (int z = box.lo[2]; z < box.hi[2]; ++z)
        for (int y = box.lo[1]; y < box.hi[1]; ++y) {
          row_reg[static_cast<std::size_t>((y - box.lo[1]) + ty * (z - box.lo[2]))] = r;
          r += bin.end(grid.linear(box.hi[0] - 1, y, z)) - bin.begin(grid.linear(box.lo[0], y, z));
        }
    }

    std::vector<Accum> acc(regs.size());
    SharedBuffer sm;
    std::vector<std::int64_t> ghost_slots;

    for (int pz = reach.lo[2]; pz < reach.hi[2]; ++pz) {
      for (int py = reach.lo[1]; py < reach.hi[1]; ++py) {
        const std::int64_t p0 = bin.begin(grid.linear(xs0, py, pz));
        const std::int64_t p1 = bin.end(grid.linear(xs1 - 1, py, pz));
        const bool row_in_box = py >= box.lo[1] && py < box.hi[1] && pz >= box.lo[2] && pz < box.hi[2];
        const std::int64_t in0 = row_in_box ? bin.begin(grid.linear(box.lo[0], py, pz)) : p1;
        const std::int64_t in1 = row_in_box ? bin.end(grid.linear(box.hi[0] - 1, py, pz)) : p1;

        sm.clear();
        ghost_slots.clear();
        for (std::int64_t s = p0; s < p1; ++s) {
          if (s >= in0 && s < in1) {
            const std::int64_t r = row_reg[static_cast<std::size_t>((py - box.lo[1]) + ty * (pz - box.lo[2]))];
            sm.push(regs[static_cast<std::size_t>(r + (s - in0))]);
          } else {
            sm.push(scene.sorted, s);
            ghost_slots.push_back(s);
          }
        }
        const auto ghosts = static_cast<std::int64_t>(ghost_slots.size());
        c.global_particle_loads += ghosts;
        c.shared_stores += p1 - p0;
        c.global_transactions +=
            strided_copy_transactions(ghost_slots, threads, profile.warp_size, profile.transaction_bytes);
        ++c.sync_count;

        const RecordView view = sm.view();
        std::int64_t active = 0;
        std::int64_t trip = 0;
        for (std::int64_t t = 0; t < nt; ++t) {
          const CellCoord tc = reg_cell[static_cast<std::size_t>(t)];
          if (std::abs(tc.y - py) > 1 || std::abs(tc.z - pz) > 1) continue;
          ++active;
          const int lo_x = std::max(xs0, tc.x - 1);
          const int hi_x = std::min(xs1, tc.x + 2);
          const std::int64_t begin = bin.begin(grid.linear(lo_x, py, pz)) - p0;
          const std::int64_t end = bin.end(grid.linear(hi_x - 1, py, pz)) - p0;
          const std::int64_t done =
              interact(acc[static_cast<std::size_t>(t)], regs[static_cast<std::size_t>(t)], view, begin, end, kernel);
          c.interactions += done;
          c.shared_loads += done;
          trip = std::max(trip, end - begin);
        }
        c.idle_lane_iterations += (threads - active) * trip;
        ++c.sync_count;
      }
    }

    for (std::int64_t t = 0; t < nt; ++t) {
      sorted.store(regs[static_cast<std::size_t>(t)].slot, b, acc[static_cast<std::size_t>(t)]);
    }
    c.global_particle_stores += nt;
  });

  return finish(scene, std::move(sorted), std::move(counters), launch);
}

}  // namespace cellpair
