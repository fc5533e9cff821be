#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellpair {

/// Raised when a grid, kernel, device profile or launch cannot be used as given.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Column = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using Index3 = std::array<int, 3>;

struct CellCoord {
  int x = 0;
  int y = 0;
  int z = 0;

  friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

/// Uniform, non-periodic cell grid. Cells are linearized X-fastest.
struct GridSpec {
  Vec3<double> origin = Vec3<double>::Zero();
  double cell_width = 1.0;
  Index3 dims{1, 1, 1};

  [[nodiscard]] std::size_t cell_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }

  [[nodiscard]] int linear(int x, int y, int z) const { return x + dims[0] * (y + dims[1] * z); }
  [[nodiscard]] int linear(const CellCoord& c) const { return linear(c.x, c.y, c.z); }

  [[nodiscard]] CellCoord coord(int linear_index) const {
    const int x = linear_index % dims[0];
    const int rest = linear_index / dims[0];
    return {x, rest % dims[1], rest / dims[1]};
  }

  [[nodiscard]] bool contains(const CellCoord& c) const {
    return c.x >= 0 && c.x < dims[0] && c.y >= 0 && c.y < dims[1] && c.z >= 0 && c.z < dims[2];
  }

  /// Throws ConfigError unless the widths and extents are usable.
  void validate() const;
};

/// Structure-of-arrays particle storage: 8 values per particle.
template <typename Scalar>
struct ParticleSet {
  Column<Scalar> pos_x, pos_y, pos_z;
  Column<Scalar> param;
  Column<Scalar> out_fx, out_fy, out_fz;
  Column<Scalar> out_pot;

  ParticleSet() = default;
  explicit ParticleSet(std::size_t n) { resize(n); }

  void resize(std::size_t n) {
    const auto rows = static_cast<Eigen::Index>(n);
    for (Column<Scalar>* c : columns()) c->setZero(rows);
  }

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(pos_x.size()); }
  [[nodiscard]] bool empty() const { return size() == 0; }

  [[nodiscard]] Vec3<Scalar> position(std::size_t i) const {
    const auto k = static_cast<Eigen::Index>(i);
    return {pos_x[k], pos_y[k], pos_z[k]};
  }

  void set_position(std::size_t i, const Vec3<Scalar>& p) {
    const auto k = static_cast<Eigen::Index>(i);
    pos_x[k] = p.x();
    pos_y[k] = p.y();
    pos_z[k] = p.z();
  }

  [[nodiscard]] std::array<Column<Scalar>*, 8> columns() {
    return {&pos_x, &pos_y, &pos_z, &param, &out_fx, &out_fy, &out_fz, &out_pot};
  }
  [[nodiscard]] std::array<const Column<Scalar>*, 8> columns() const {
    return {&pos_x, &pos_y, &pos_z, &param, &out_fx, &out_fy, &out_fz, &out_pot};
  }

  friend bool operator==(const ParticleSet& a, const ParticleSet& b) {
    const auto ca = a.columns();
    const auto cb = b.columns();
    for (std::size_t k = 0; k < ca.size(); ++k) {
      if (ca[k]->size() != cb[k]->size() || !(*ca[k] == *cb[k]).all()) return false;
    }
    return true;
  }
};

/// floor((pos - origin) / width) per axis, clamped into the grid.
template <typename Scalar>
CellCoord cell_index(const Vec3<Scalar>& pos, const GridSpec& grid) {
  std::array<int, 3> c{};
  for (int a = 0; a < 3; ++a) {
    const double rel = (static_cast<double>(pos[a]) - grid.origin[a]) / grid.cell_width;
    long long v = static_cast<long long>(std::floor(rel));
    if (v < 0) v = 0;
    if (v > grid.dims[a] - 1) v = grid.dims[a] - 1;
    c[a] = static_cast<int>(v);
  }
  return {c[0], c[1], c[2]};
}

/// All cells at Chebyshev distance <= 1 inside the grid, Z-outer, Y-middle, X-inner.
std::vector<CellCoord> neighbor_cells(const CellCoord& c, const GridSpec& grid);

/// Half-open cell range [lo, hi) along each axis.
struct CellBox {
  Index3 lo{0, 0, 0};
  Index3 hi{0, 0, 0};

  [[nodiscard]] int extent(int axis) const { return hi[axis] - lo[axis]; }
  [[nodiscard]] int cell_count() const { return extent(0) * extent(1) * extent(2); }
  [[nodiscard]] bool contains(const CellCoord& c) const {
    return c.x >= lo[0] && c.x < hi[0] && c.y >= lo[1] && c.y < hi[1] && c.z >= lo[2] &&
           c.z < hi[2];
  }
  /// Grows by one cell on every side, clamped to the grid.
  [[nodiscard]] CellBox with_halo(const GridSpec& grid) const;
};

}  // namespace cellpair
