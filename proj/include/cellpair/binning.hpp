#pragma once

#include "cellpair/core.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cellpair {

/// Particles sorted by cell: segment of cell k is [offsets[k], offsets[k+1]).
struct CellBinning {
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> offsets;  // size Nc + 1
  std::vector<std::int64_t> perm;     // sorted slot -> original index
  std::int64_t max_per_cell = 0;      // M_C

  [[nodiscard]] std::int64_t begin(int cell) const { return offsets[static_cast<std::size_t>(cell)]; }
  [[nodiscard]] std::int64_t end(int cell) const { return offsets[static_cast<std::size_t>(cell) + 1]; }
  [[nodiscard]] std::int64_t count(int cell) const { return counts[static_cast<std::size_t>(cell)]; }
};

/// Exclusive prefix with the total appended: [a, b, c] -> [0, a, a+b, a+b+c].
std::vector<std::int64_t> global_prefix(std::span<const std::int64_t> counts);

/// Stable counting sort of particles into grid cells.
CellBinning bin_particles(const ParticleSet<float>& parts, const GridSpec& grid);

/// Sorted copy: slot s holds original particle perm[s].
ParticleSet<float> gather(const ParticleSet<float>& parts, std::span<const std::int64_t> perm);

/// Inverse of gather.
ParticleSet<float> scatter(const ParticleSet<float>& sorted, std::span<const std::int64_t> perm);

}  // namespace cellpair
