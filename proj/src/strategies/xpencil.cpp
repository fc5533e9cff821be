// Pencil load: a block owns a run of cells along X. It stages its own pencil
// (with the two X ghosts), latches one target per thread, then stages the up
// to eight neighboring (Y, Z) pencils one at a time.

#include "detail.hpp"

#include "cellpair/launchcfg.hpp"

namespace cellpair {

using namespace detail;

namespace {

struct Pencil {
  std::int64_t begin = 0;  // first sorted slot
  std::int64_t end = 0;
};

Pencil pencil_span(const Scene& scene, int xs0, int xs1, int y, int z) {
  const auto& g = scene.grid;
  return {scene.binning.begin(g.linear(xs0, y, z)), scene.binning.end(g.linear(xs1 - 1, y, z))};
}

}  // namespace

StrategyOutcome run_xpencil(const Scene& scene, const KernelSpec& kernel,
                            const DeviceProfile& profile, const StrategyOptions& opts) {
  check_kernel_fits(scene, kernel);
  const auto& grid = scene.grid;
  const auto& bin = scene.binning;

  const auto cfg = configure_xpencil(profile, bin.max_per_cell, grid.dims, opts.pencil_interior);
  if (!cfg) {
    return Unavailable{"X-pencil of 3 cells does not fit: M_C = " + std::to_string(bin.max_per_cell)};
  }
  const int threads = cfg->threads;
  LaunchConfig launch{cfg->blocks, threads,
                      static_cast<std::int64_t>(cfg->total_len) * std::max<std::int64_t>(1, bin.max_per_cell) *
                          profile.bytes_per_particle,
                      *cfg};
  launch.validate(profile);

  const int len = cfg->interior_len;
  const int nbx = static_cast<int>(ceil_div(grid.dims[0], len));

  SortedOutputs sorted(scene.size());
  std::vector<TrafficCounters> counters(static_cast<std::size_t>(cfg->blocks));

  for_each_block(cfg->blocks, [&](std::int64_t b) {
    TrafficCounters& c = counters[static_cast<std::size_t>(b)];
    const int bx = static_cast<int>(b % nbx);
    const int y = static_cast<int>((b / nbx) % grid.dims[1]);
    const int z = static_cast<int>(b / (static_cast<std::int64_t>(nbx) * grid.dims[1]));
    const int x0 = bx * len;
    const int x1 = std::min(grid.dims[0], x0 + len);
    const int xs0 = std::max(0, x0 - 1);
    const int xs1 = std::min(grid.dims[0], x1 + 1);

    SharedBuffer sm;
    std::vector<std::int64_t> staged_slots;
    Pencil staged{};

    auto stage = [&](int py, int pz) {
      staged = pencil_span(scene, xs0, xs1, py, pz);
      sm.clear();
      staged_slots.clear();
      for (std::int64_t s = staged.begin; s < staged.end; ++s) {
        sm.push(scene.sorted, s);
        staged_slots.push_back(s);
      }
      const std::int64_t m = staged.end - staged.begin;
      c.global_particle_loads += m;
      c.shared_stores += m;
      c.global_transactions +=
          strided_copy_transactions(staged_slots, threads, profile.warp_size, profile.transaction_bytes);
      ++c.sync_count;
    };

    stage(y, z);
    const std::int64_t home_begin = staged.begin;
    const std::int64_t first_target = bin.begin(grid.linear(x0, y, z));
    const std::int64_t nb = bin.end(grid.linear(x1 - 1, y, z)) - first_target;

    std::vector<Target> mine(static_cast<std::size_t>(nb));
    std::vector<int> mine_x(static_cast<std::size_t>(nb));
    std::vector<Accum> acc(static_cast<std::size_t>(nb));
    for (int cx = x0; cx < x1; ++cx) {
      const int g = grid.linear(cx, y, z);
      for (std::int64_t s = bin.begin(g); s < bin.end(g); ++s) {
        const auto t = static_cast<std::size_t>(s - first_target);
        const auto si = static_cast<std::size_t>(s - home_begin);
        mine[t] = Target{{sm.x[si], sm.y[si], sm.z[si]}, sm.param[si], sm.gid[si]};
        mine_x[t] = cx;
      }
    }
    c.shared_loads += nb;

    auto compute = [&](int py, int pz) {
      const RecordView view = sm.view();
      std::int64_t trip = 0;
      for (std::int64_t t = 0; t < nb; ++t) {
        const int cx = mine_x[static_cast<std::size_t>(t)];
        const int lo_x = std::max(xs0, cx - 1);
        const int hi_x = std::min(xs1, cx + 2);
        const std::int64_t begin = bin.begin(grid.linear(lo_x, py, pz)) - staged.begin;
        const std::int64_t end = bin.end(grid.linear(hi_x - 1, py, pz)) - staged.begin;
        const std::int64_t done =
            interact(acc[static_cast<std::size_t>(t)], mine[static_cast<std::size_t>(t)], view, begin, end, kernel);
        c.interactions += done;
        c.shared_loads += done;
        trip = std::max(trip, end - begin);
      }
      c.idle_lane_iterations += (threads - nb) * trip;
      ++c.sync_count;
    };

    compute(y, z);
    for (int pz = std::max(0, z - 1); pz < std::min(grid.dims[2], z + 2); ++pz) {
      for (int py = std::max(0, y - 1); py < std::min(grid.dims[1], y + 2); ++py) {
        if (py == y && pz == z) continue;
        stage(py, pz);
        compute(py, pz);
      }
    }

    for (std::int64_t t = 0; t < nb; ++t) {
      sorted.store(mine[static_cast<std::size_t>(t)].slot, b, acc[static_cast<std::size_t>(t)]);
    }
    c.global_particle_stores += nb;
  });

  return finish(scene, std::move(sorted), std::move(counters), launch);
}

}  // namespace cellpair
