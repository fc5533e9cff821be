#pragma once

#include "cellpair/strategies.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace cellpair::detail {

struct Accum {
  Vec3<float> force = Vec3<float>::Zero();
  float potential = 0.0f;
};

struct Target {
  Vec3<float> pos;
  float param = 0.0f;
  std::int64_t slot = -1;  // sorted global slot
};

/// SoA records, either the global sorted arrays or a staged shared buffer.
struct RecordView {
  const float* x = nullptr;
  const float* y = nullptr;
  const float* z = nullptr;
  const float* param = nullptr;
  const std::int64_t* gid = nullptr;  // nullptr: record k is global slot k

  [[nodiscard]] std::int64_t id(std::int64_t k) const { return gid ? gid[k] : k; }
};

inline RecordView global_view(const ParticleSet<float>& s) {
  return {s.pos_x.data(), s.pos_y.data(), s.pos_z.data(), s.param.data(), nullptr};
}

inline Target load_target(const ParticleSet<float>& s, std::int64_t slot) {
  return {s.position(static_cast<std::size_t>(slot)), s.param[static_cast<Eigen::Index>(slot)], slot};
}

/// Accumulates records [begin, end) of `src` into `acc`, skipping the target
/// itself. Returns the number of interactions evaluated.
inline std::int64_t interact(Accum& acc, const Target& t, const RecordView& src,
                             std::int64_t begin, std::int64_t end, const KernelSpec& k) {
  std::int64_t n = 0;
  for (std::int64_t s = begin; s < end; ++s) {
    if (src.id(s) == t.slot) continue;
    const Vec3<float> sp{src.x[s], src.y[s], src.z[s]};
    const auto c = pair_contribution<float>(t.pos, t.param, sp, src.param[s], k);
    acc.force += c.force;
    acc.potential += c.potential;
    ++n;
  }
  return n;
}

/// Block-private shared-memory particle buffer.
struct SharedBuffer {
  std::vector<float> x, y, z, param;
  std::vector<std::int64_t> gid;

  void clear() {
    x.clear();
    y.clear();
    z.clear();
    param.clear();
    gid.clear();
  }
  void push(const ParticleSet<float>& s, std::int64_t slot) {
    const auto k = static_cast<Eigen::Index>(slot);
    x.push_back(s.pos_x[k]);
    y.push_back(s.pos_y[k]);
    z.push_back(s.pos_z[k]);
    param.push_back(s.param[k]);
    gid.push_back(slot);
  }
  void push(const Target& t) {
    x.push_back(t.pos.x());
    y.push_back(t.pos.y());
    z.push_back(t.pos.z());
    param.push_back(t.param);
    gid.push_back(t.slot);
  }
  [[nodiscard]] std::int64_t size() const { return static_cast<std::int64_t>(gid.size()); }
  [[nodiscard]] RecordView view() const { return {x.data(), y.data(), z.data(), param.data(), gid.data()}; }
};

/// Per-slot outputs in sorted order plus write provenance.
struct SortedOutputs {
  Outputs<float> out;
  std::vector<std::int64_t> writer;
  std::vector<std::int64_t> writes;

  explicit SortedOutputs(std::size_t n) : out(n), writer(n, -1), writes(n, 0) {}

  void store(std::int64_t slot, std::int64_t block, const Accum& a) {
    const auto k = static_cast<Eigen::Index>(slot);
    out.fx[k] = a.force.x();
    out.fy[k] = a.force.y();
    out.fz[k] = a.force.z();
    out.pot[k] = a.potential;
    writer[static_cast<std::size_t>(slot)] = block;
    ++writes[static_cast<std::size_t>(slot)];
  }
};

/// Runs fn(block) for every block; blocks may run on several host threads.
template <typename Fn>
void for_each_block(std::int64_t blocks, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::int64_t>(hw, blocks));
  if (workers <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t b = next++; b < blocks; b = next++) fn(b);
    });
  }
  for (auto& t : pool) t.join();
}

/// Scatters sorted outputs to original order and sums block counters.
StrategyResult finish(const Scene& scene, SortedOutputs&& sorted,
                      std::vector<TrafficCounters>&& block_counters, const LaunchConfig& launch);

/// Throws ConfigError when the kernel cutoff exceeds the cell width.
void check_kernel_fits(const Scene& scene, const KernelSpec& kernel);

/// Transactions for lanes of one warp-synchronous group loading the given slots.
inline std::int64_t warp_transactions(std::span<const std::int64_t> lane_slots, int warp_size,
                                      int transaction_bytes) {
  std::int64_t total = 0;
  for (std::size_t w = 0; w < lane_slots.size(); w += static_cast<std::size_t>(warp_size)) {
    const std::size_t n = std::min(lane_slots.size() - w, static_cast<std::size_t>(warp_size));
    total += particle_load_transactions(lane_slots.subspan(w, n), transaction_bytes);
  }
  return total;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace cellpair::detail
