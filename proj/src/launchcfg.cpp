#include "cellpair/launchcfg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cellpair {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::int64_t icbrt_floor(std::int64_t v) {
  std::int64_t p = static_cast<std::int64_t>(std::cbrt(static_cast<double>(v)));
  while (p > 0 && p * p * p > v) --p;
  while ((p + 1) * (p + 1) * (p + 1) <= v) ++p;
  return p;
}

Index3 clamp_to_grid(Index3 d, const Index3& grid) {
  for (int a = 0; a < 3; ++a) d[a] = std::clamp(d[a], 1, grid[a]);
  return d;
}

}  // namespace

std::int64_t max_cells_in_shared(std::int64_t shared_bytes, std::int64_t max_per_cell,
                                 std::int64_t bytes_per_particle) {
  const std::int64_t per_cell = std::max<std::int64_t>(1, max_per_cell) * bytes_per_particle;
  return shared_bytes / per_cell;
}

std::optional<Index3> subbox_dims_for_cells(std::int64_t max_cells) {
  const std::int64_t p = icbrt_floor(std::max<std::int64_t>(0, max_cells));
  const std::array<std::array<std::int64_t, 3>, 4> candidates{{
      {p, p, p},
      {p + 1, p, p},
      {p + 1, p + 1, p},
      {p + 2, p, p},
  }};
  std::int64_t best_cells = -1;
  Index3 best{0, 0, 0};
  for (const auto& c : candidates) {
    const std::int64_t cells = c[0] * c[1] * c[2];
    if (cells <= max_cells && cells > best_cells) {
      best_cells = cells;
      best = {static_cast<int>(c[0]), static_cast<int>(c[1]), static_cast<int>(c[2])};
    }
  }
  if (best_cells < 27) return std::nullopt;
  return best;
}

std::optional<Index3> subbox_dims(std::int64_t shared_bytes, std::int64_t max_per_cell,
                                  std::int64_t bytes_per_particle) {
  return subbox_dims_for_cells(max_cells_in_shared(shared_bytes, max_per_cell, bytes_per_particle));
}

std::optional<PencilConfig> pencil_len(std::int64_t shared_bytes, std::int64_t max_per_cell,
                                       std::int64_t bytes_per_particle, int grid_nx) {
  const std::int64_t mc = std::max<std::int64_t>(1, max_per_cell);
  if (mc > kPencilThreadCap) return std::nullopt;
  const std::int64_t total = std::min({max_cells_in_shared(shared_bytes, mc, bytes_per_particle),
                                       static_cast<std::int64_t>(grid_nx) + 2,
                                       kPencilThreadCap / mc});
  if (total < 3) return std::nullopt;
  PencilConfig pc;
  pc.total_len = static_cast<int>(total);
  pc.interior_len = pc.total_len - 2;
  pc.threads = static_cast<int>(mc * total);
  return pc;
}

std::int64_t block_count(const Index3& interior, const Index3& grid) {
  std::int64_t blocks = 1;
  for (int a = 0; a < 3; ++a) blocks *= ceil_div(grid[a], std::max(1, interior[a]));
  return blocks;
}

Index3 ensure_parallelism(Index3 interior, const Index3& grid, int num_sms) {
  while (block_count(interior, grid) < num_sms) {
    int pick = -1;
    for (int a : {2, 1, 0}) {
      if (interior[a] > 1 && (pick < 0 || interior[a] > interior[pick])) pick = a;
    }
    if (pick < 0) break;
    interior[pick] = 1;
  }
  return interior;
}

std::optional<SubBoxConfig> configure_all_in_sm(const DeviceProfile& profile,
                                                std::int64_t max_per_cell, const Index3& grid) {
  const std::int64_t mc = std::max<std::int64_t>(1, max_per_cell);
  const auto box = subbox_dims(profile.shared_mem_per_block, mc, profile.bytes_per_particle);
  if (!box) return std::nullopt;
  Index3 interior{(*box)[0] - 2, (*box)[1] - 2, (*box)[2] - 2};
  interior = ensure_parallelism(clamp_to_grid(interior, grid), grid, profile.num_sms);

  SubBoxConfig cfg;
  cfg.interior_dims = interior;
  cfg.box_dims = {interior[0] + 2, interior[1] + 2, interior[2] + 2};
  cfg.bytes_per_cell = mc * profile.bytes_per_particle;
  const std::int64_t box_cells =
      static_cast<std::int64_t>(cfg.box_dims[0]) * cfg.box_dims[1] * cfg.box_dims[2];
  cfg.threads = static_cast<int>(std::min<std::int64_t>(kAllInSmThreadCap, mc * box_cells));
  cfg.blocks = block_count(interior, grid);
  return cfg;
}

std::optional<PencilConfig> configure_xpencil(const DeviceProfile& profile,
                                              std::int64_t max_per_cell, const Index3& grid,
                                              std::optional<int> interior_override) {
  const std::int64_t mc = std::max<std::int64_t>(1, max_per_cell);
  const auto base = pencil_len(profile.shared_mem_per_block, mc, profile.bytes_per_particle, grid[0]);
  if (!base) return std::nullopt;
  int len = 0;
  if (interior_override) {
    len = std::clamp(*interior_override, 1, grid[0]);
    if (len > base->interior_len) return std::nullopt;
  } else {
    len = ensure_parallelism({std::min(base->interior_len, grid[0]), 1, 1}, grid,
                             profile.num_sms)[0];
  }
  PencilConfig pc;
  pc.interior_len = len;
  pc.total_len = len + 2;
  pc.threads = static_cast<int>(mc * pc.total_len);
  pc.blocks = block_count({len, 1, 1}, grid);
  return pc;
}

std::optional<RegisterBoxConfig> configure_xpencil_reg(const DeviceProfile& profile,
                                                       std::int64_t max_per_cell,
                                                       const Index3& grid,
                                                       std::optional<Index3> target_override) {
  const std::int64_t mc = std::max<std::int64_t>(1, max_per_cell);
  const auto base = pencil_len(profile.shared_mem_per_block, mc, profile.bytes_per_particle, grid[0]);
  if (!base) return std::nullopt;

  Index3 target{};
  if (target_override) {
    target = clamp_to_grid(*target_override, grid);
    if (target[0] > base->interior_len) return std::nullopt;
  } else {
    const int tx = std::min(base->interior_len, grid[0]);
    const std::int64_t budget = kPencilThreadCap / (mc * tx);
    const int side = static_cast<int>(std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::sqrt(static_cast<double>(budget)))));
    target = clamp_to_grid({tx, side, side}, grid);
    target = ensure_parallelism(target, grid, profile.num_sms);
  }
  const std::int64_t threads = mc * target[0] * target[1] * target[2];
  if (threads > kPencilThreadCap) return std::nullopt;

  RegisterBoxConfig cfg;
  cfg.target_dims = target;
  cfg.pencil_total_len = target[0] + 2;
  cfg.threads = static_cast<int>(threads);
  cfg.blocks = block_count(target, grid);
  return cfg;
}

}  // namespace cellpair
