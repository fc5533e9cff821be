#pragma once

#include "cellpair/core.hpp"

#include <random>

namespace cellpair::test {

/// n particles uniform in [0, extent)^3 with unit params.
inline ParticleSet<float> random_particles(std::size_t n, const Index3& extent, unsigned seed) {
  std::mt19937 rng(seed);
  ParticleSet<float> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec3<float> v;
    for (int a = 0; a < 3; ++a) {
      std::uniform_real_distribution<float> u(0.0f, static_cast<float>(extent[a]));
      v[a] = u(rng);
    }
    p.set_position(i, v);
  }
  p.param.setOnes();
  return p;
}

inline GridSpec unit_grid(const Index3& dims) {
  GridSpec g;
  g.dims = dims;
  return g;
}

}  // namespace cellpair::test
