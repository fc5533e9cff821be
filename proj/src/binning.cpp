#include "cellpair/binning.hpp"

#include <algorithm>

namespace cellpair {

std::vector<std::int64_t> global_prefix(std::span<const std::int64_t> counts) {
  std::vector<std::int64_t> offsets(counts.size() + 1, 0);
  for (std::size_t k = 0; k < counts.size(); ++k) offsets[k + 1] = offsets[k] + counts[k];
  return offsets;
}

CellBinning bin_particles(const ParticleSet<float>& parts, const GridSpec& grid) {
  grid.validate();
  const std::size_t n = parts.size();
  CellBinning b;
  b.counts.assign(grid.cell_count(), 0);

  std::vector<int> cell_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    cell_of[i] = grid.linear(cell_index(parts.position(i), grid));
    ++b.counts[static_cast<std::size_t>(cell_of[i])];
  }
  b.offsets = global_prefix(b.counts);
  b.max_per_cell = b.counts.empty() ? 0 : *std::max_element(b.counts.begin(), b.counts.end());

  // Walking particles in original order keeps each cell segment stable.
  std::vector<std::int64_t> cursor(b.offsets.begin(), b.offsets.end() - 1);
  b.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.perm[static_cast<std::size_t>(cursor[static_cast<std::size_t>(cell_of[i])]++)] =
        static_cast<std::int64_t>(i);
  }
  return b;
}

ParticleSet<float> gather(const ParticleSet<float>& parts, std::span<const std::int64_t> perm) {
  ParticleSet<float> out(perm.size());
  const auto src = parts.columns();
  const auto dst = out.columns();
  for (std::size_t c = 0; c < src.size(); ++c) {
    for (std::size_t s = 0; s < perm.size(); ++s) {
      (*dst[c])[static_cast<Eigen::Index>(s)] = (*src[c])[static_cast<Eigen::Index>(perm[s])];
    }
  }
  return out;
}

ParticleSet<float> scatter(const ParticleSet<float>& sorted, std::span<const std::int64_t> perm) {
  ParticleSet<float> out(perm.size());
  const auto src = sorted.columns();
  const auto dst = out.columns();
  for (std::size_t c = 0; c < src.size(); ++c) {
    for (std::size_t s = 0; s < perm.size(); ++s) {
      (*dst[c])[static_cast<Eigen::Index>(perm[s])] = (*src[c])[static_cast<Eigen::Index>(s)];
    }
  }
  return out;
}

}  // namespace cellpair
