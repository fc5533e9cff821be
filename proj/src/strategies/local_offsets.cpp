#include "detail.hpp"

namespace cellpair {

LocalOffsets build_local_offsets(const CellBox& box, const CellBinning& binning,
                                 const GridSpec& grid, int scan_threads) {
  LocalOffsets lo;
  lo.box = box;
  const int ex = box.extent(0), ey = box.extent(1), ez = box.extent(2);
  const int rows = ey * ez;
  if (ex <= 0 || rows <= 0) return lo;

  // Row r = (y, z) starts at global cell `first[r]`; X-fastest linearization
  // makes the row's particles one contiguous run, and first[r] + ex is a valid
  // offset index even when it wraps to the next row or past the last cell.
  std::vector<int> first(static_cast<std::size_t>(rows));
  lo.pencil_counts.resize(static_cast<std::size_t>(rows));
  for (int z = 0; z < ez; ++z) {
    for (int y = 0; y < ey; ++y) {
      const int r = y + ey * z;
      const int f = grid.linear(box.lo[0], box.lo[1] + y, box.lo[2] + z);
      first[static_cast<std::size_t>(r)] = f;
      lo.pencil_counts[static_cast<std::size_t>(r)] = binning.begin(f + ex) - binning.begin(f);
    }
  }

  // Corner offset, then the particles skipped between consecutive rows.
  lo.exclusions.resize(static_cast<std::size_t>(rows));
  lo.exclusions[0] = binning.begin(first[0]);
  for (int r = 1; r < rows; ++r) {
    const auto prev = static_cast<std::size_t>(r - 1);
    lo.exclusions[static_cast<std::size_t>(r)] =
        binning.begin(first[static_cast<std::size_t>(r)]) -
        (binning.begin(first[prev]) + lo.pencil_counts[prev]);
  }
  lo.scan = scan_block_simulated(std::span<std::int64_t>(lo.exclusions), scan_threads);

  const int cells = box.cell_count();
  lo.global_offsets.resize(static_cast<std::size_t>(cells));
  lo.counts.resize(static_cast<std::size_t>(cells));
  lo.local_offsets.resize(static_cast<std::size_t>(cells));
  for (int z = 0; z < ez; ++z) {
    for (int y = 0; y < ey; ++y) {
      const int r = y + ey * z;
      for (int x = 0; x < ex; ++x) {
        const int g = grid.linear(box.lo[0] + x, box.lo[1] + y, box.lo[2] + z);
        const auto k = static_cast<std::size_t>(x + ex * r);
        lo.global_offsets[k] = binning.begin(g);
        lo.counts[k] = binning.count(g);
        lo.local_offsets[k] = binning.begin(g) - lo.exclusions[static_cast<std::size_t>(r)];
      }
      const std::int64_t g0 = binning.begin(first[static_cast<std::size_t>(r)]);
      for (std::int64_t s = 0; s < lo.pencil_counts[static_cast<std::size_t>(r)]; ++s) {
        lo.shared_to_global.push_back(g0 + s);
      }
    }
  }
  return lo;
}

}  // namespace cellpair
