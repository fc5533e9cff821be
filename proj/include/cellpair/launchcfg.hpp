#pragma once

// Launch-shape arithmetic for the shared-memory strategies.

#include "cellpair/core.hpp"
#include "cellpair/gpumodel.hpp"

#include <cstdint>
#include <optional>

namespace cellpair {

inline constexpr int kAllInSmThreadCap = 512;
inline constexpr int kPencilThreadCap = 1024;

/// Sub-box dims (ghosts included, largest extent on X) that fit `shared_bytes`
/// with M_C particles per cell, or nullopt when fewer than 27 cells fit.
std::optional<Index3> subbox_dims(std::int64_t shared_bytes, std::int64_t max_per_cell,
                                  std::int64_t bytes_per_particle);

/// Cells that fit: floor(shared_bytes / (M_C * bytes_per_particle)).
std::int64_t max_cells_in_shared(std::int64_t shared_bytes, std::int64_t max_per_cell,
                                 std::int64_t bytes_per_particle);

/// Same selection driven directly by a cell budget.
std::optional<Index3> subbox_dims_for_cells(std::int64_t max_cells);

/// X-pencil length bounded by shared memory, the grid and the 1024-thread cap.
/// `blocks` is left at 0; see pencil_blocks.
std::optional<PencilConfig> pencil_len(std::int64_t shared_bytes, std::int64_t max_per_cell,
                                       std::int64_t bytes_per_particle, int grid_nx);

/// Product over axes of ceil(grid / interior).
std::int64_t block_count(const Index3& interior, const Index3& grid);

/// Collapses the largest interior dim to 1 (ties: Z, then Y, then X) while
/// there are fewer blocks than multiprocessors.
Index3 ensure_parallelism(Index3 interior, const Index3& grid, int num_sms);

/// Full All-in-SM configuration for a binned grid, or nullopt if inapplicable.
std::optional<SubBoxConfig> configure_all_in_sm(const DeviceProfile& profile,
                                                std::int64_t max_per_cell, const Index3& grid);

/// Full X-pencil configuration; `interior_override` pins the interior length.
std::optional<PencilConfig> configure_xpencil(const DeviceProfile& profile,
                                              std::int64_t max_per_cell, const Index3& grid,
                                              std::optional<int> interior_override = {});

/// Full X-pencil-reg configuration; `target_override` pins the target box.
std::optional<RegisterBoxConfig> configure_xpencil_reg(
    const DeviceProfile& profile, std::int64_t max_per_cell, const Index3& grid,
    std::optional<Index3> target_override = {});

}  // namespace cellpair
