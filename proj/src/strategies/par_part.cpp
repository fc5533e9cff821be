// One thread per target particle, sources read straight from global memory.
// Par-Part-NoLoop and Par-Part-Loop share this body: NoLoop is the
// grid-stride loop launched with exactly one iteration.

#include "detail.hpp"

namespace cellpair {

namespace {

using namespace detail;

StrategyOutcome run_par_part(const Scene& scene, const KernelSpec& kernel,
                             const DeviceProfile& profile, std::int64_t blocks, int threads) {
  check_kernel_fits(scene, kernel);
  const auto n = static_cast<std::int64_t>(scene.size());
  LaunchConfig launch;
  launch.blocks = blocks;
  launch.threads_per_block = threads;
  launch.validate(profile);
  if (blocks < 1) throw ConfigError("par-part launch needs at least one block");

  const std::int64_t stride = blocks * threads;
  const RecordView global = global_view(scene.sorted);
  const auto& grid = scene.grid;
  const auto& bin = scene.binning;
  const int warp = profile.warp_size;

  SortedOutputs sorted(static_cast<std::size_t>(n));
  std::vector<TrafficCounters> counters(static_cast<std::size_t>(blocks));

  for_each_block(blocks, [&](std::int64_t b) {
    TrafficCounters& c = counters[static_cast<std::size_t>(b)];
    std::vector<std::vector<std::int64_t>> lane_sources(static_cast<std::size_t>(warp));
    std::vector<std::int64_t> lane_slots;
    std::vector<std::int64_t> step_slots;

    for (std::int64_t base = b * threads; base < n; base += stride) {
      const std::int64_t active = std::min<std::int64_t>(threads, n - base);
      std::int64_t block_trip = 0;

      for (std::int64_t w0 = 0; w0 < active; w0 += warp) {
        const std::int64_t lanes = std::min<std::int64_t>(warp, active - w0);
        lane_slots.clear();
        std::size_t longest = 0;
        for (std::int64_t l = 0; l < lanes; ++l) {
          const std::int64_t idx = base + w0 + l;
          lane_slots.push_back(idx);
          const Target t = load_target(scene.sorted, idx);
          auto& sources = lane_sources[static_cast<std::size_t>(l)];
          sources.clear();
          std::int64_t trip = 0;
          Accum acc;
          for (const CellCoord& nc : neighbor_cells(cell_index(t.pos, grid), grid)) {
            const int cell = grid.linear(nc);
            trip += bin.count(cell);
            for (std::int64_t s = bin.begin(cell); s < bin.end(cell); ++s) {
              if (s != idx) sources.push_back(s);
            }
            c.interactions += interact(acc, t, global, bin.begin(cell), bin.end(cell), kernel);
          }
          block_trip = std::max(block_trip, trip);
          longest = std::max(longest, sources.size());
          c.global_particle_loads += 1 + static_cast<std::int64_t>(sources.size());
          sorted.store(idx, b, acc);
          ++c.global_particle_stores;
        }
        c.global_transactions += particle_load_transactions(lane_slots, profile.transaction_bytes);
        // Lanes walk their source lists in lockstep.
        for (std::size_t step = 0; step < longest; ++step) {
          step_slots.clear();
          for (std::int64_t l = 0; l < lanes; ++l) {
            const auto& sources = lane_sources[static_cast<std::size_t>(l)];
            if (step < sources.size()) step_slots.push_back(sources[step]);
          }
          c.global_transactions += particle_load_transactions(step_slots, profile.transaction_bytes);
        }
      }
      c.idle_lane_iterations += (threads - active) * block_trip;
    }
  });

  return finish(scene, std::move(sorted), std::move(counters), launch);
}

}  // namespace

StrategyOutcome run_par_part_noloop(const Scene& scene, const KernelSpec& kernel,
                                    const DeviceProfile& profile) {
  const auto n = static_cast<std::int64_t>(scene.size());
  return run_par_part(scene, kernel, profile,
                      std::max<std::int64_t>(1, detail::ceil_div(n, kParticleThreads)),
                      kParticleThreads);
}

StrategyOutcome run_par_part_loop(const Scene& scene, const KernelSpec& kernel,
                                  const DeviceProfile& profile, const StrategyOptions& opts) {
  const auto n = static_cast<std::int64_t>(scene.size());
  const int threads = opts.threads.value_or(kParticleThreads);
  const std::int64_t blocks =
      opts.blocks.value_or(std::max<std::int64_t>(1, detail::ceil_div(n, threads)));
  return run_par_part(scene, kernel, profile, blocks, threads);
}

}  // namespace cellpair
