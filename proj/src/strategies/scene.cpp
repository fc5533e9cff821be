#include "detail.hpp"

#include <numeric>

namespace cellpair {

Scene make_scene(const ParticleSet<float>& particles, const GridSpec& grid) {
  Scene s;
  s.grid = grid;
  s.binning = bin_particles(particles, grid);
  s.sorted = gather(particles, s.binning.perm);
  return s;
}

namespace detail {

StrategyResult finish(const Scene& scene, SortedOutputs&& sorted,
                      std::vector<TrafficCounters>&& block_counters, const LaunchConfig& launch) {
  StrategyResult r;
  const std::size_t n = scene.size();
  r.outputs = Outputs<float>(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto from = static_cast<Eigen::Index>(s);
    const auto to = static_cast<Eigen::Index>(scene.binning.perm[s]);
    r.outputs.fx[to] = sorted.out.fx[from];
    r.outputs.fy[to] = sorted.out.fy[from];
    r.outputs.fz[to] = sorted.out.fz[from];
    r.outputs.pot[to] = sorted.out.pot[from];
  }
  r.counters = std::accumulate(block_counters.begin(), block_counters.end(), TrafficCounters{});
  r.block_counters = std::move(block_counters);
  r.writer_block = std::move(sorted.writer);
  r.write_count = std::move(sorted.writes);
  r.launch = launch;
  return r;
}

void check_kernel_fits(const Scene& scene, const KernelSpec& kernel) {
  kernel.validate();
  scene.grid.validate();
  if (kernel.cutoff > scene.grid.cell_width) {
    throw ConfigError("kernel cutoff " + std::to_string(kernel.cutoff) + " exceeds cell width " +
                      std::to_string(scene.grid.cell_width));
  }
}

}  // namespace detail
}  // namespace cellpair
