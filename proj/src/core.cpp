#include "cellpair/core.hpp"

#include <algorithm>
#include <cmath>

namespace cellpair {

void GridSpec::validate() const {
  if (!(cell_width > 0.0) || !std::isfinite(cell_width)) {
    throw ConfigError("grid cell width must be positive and finite");
  }
  for (int d : dims) {
    if (d < 1) throw ConfigError("grid dimensions must be >= 1");
  }
}

std::vector<CellCoord> neighbor_cells(const CellCoord& c, const GridSpec& grid) {
  std::vector<CellCoord> out;
  out.reserve(27);
  const int z0 = std::max(0, c.z - 1), z1 = std::min(grid.dims[2] - 1, c.z + 1);
  const int y0 = std::max(0, c.y - 1), y1 = std::min(grid.dims[1] - 1, c.y + 1);
  const int x0 = std::max(0, c.x - 1), x1 = std::min(grid.dims[0] - 1, c.x + 1);
  for (int z = z0; z <= z1; ++z)
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) out.push_back({x, y, z});
  return out;
}

CellBox CellBox::with_halo(const GridSpec& grid) const {
  CellBox b;
  for (int a = 0; a < 3; ++a) {
    b.lo[a] = std::max(0, lo[a] - 1);
    b.hi[a] = std::min(grid.dims[a], hi[a] + 1);
  }
  return b;
}

}  // namespace cellpair
