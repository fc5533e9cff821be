#include "cellpair/oracle.hpp"

#include <utility>

namespace cellpair {

CutoffPairs cutoff_pairs(const ParticleSet<float>& parts, double cutoff) {
  const auto n = static_cast<Eigen::Index>(parts.size());
  const Column<double> x = parts.pos_x.cast<double>();
  const Column<double> y = parts.pos_y.cast<double>();
  const Column<double> z = parts.pos_z.cast<double>();
  const double rc2 = cutoff * cutoff;

  // Half sweep j > i, then mirror into full ascending rows.
  std::vector<std::vector<std::int32_t>> upper(static_cast<std::size_t>(n));
  std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
  Column<double> d2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index m = n - i - 1;
    if (m == 0) break;
    auto seg = d2.head(m);
    seg = (x.tail(m) - x[i]).square() + (y.tail(m) - y[i]).square() + (z.tail(m) - z[i]).square();
    auto& row = upper[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < m; ++k) {
      if (seg[k] < rc2) row.push_back(static_cast<std::int32_t>(i + 1 + k));
    }
    degree[static_cast<std::size_t>(i)] += static_cast<std::int64_t>(row.size());
    for (std::int32_t j : row) ++degree[static_cast<std::size_t>(j)];
  }

  CutoffPairs out;
  out.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.offsets[static_cast<std::size_t>(i) + 1] = out.offsets[static_cast<std::size_t>(i)] + degree[static_cast<std::size_t>(i)];
  }
  out.neighbors.resize(static_cast<std::size_t>(out.offsets.back()));
  std::vector<std::int64_t> fill(out.offsets.begin(), out.offsets.end() - 1);
  // Visiting i ascending appends lower neighbors (j < i) in ascending order
  // before the row's own upper neighbors.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::int32_t j : upper[static_cast<std::size_t>(i)]) {
      out.neighbors[static_cast<std::size_t>(fill[static_cast<std::size_t>(j)]++)] = static_cast<std::int32_t>(i);
    }
    for (std::int32_t j : upper[static_cast<std::size_t>(i)]) {
      out.neighbors[static_cast<std::size_t>(fill[static_cast<std::size_t>(i)]++)] = j;
    }
    std::vector<std::int32_t>().swap(upper[static_cast<std::size_t>(i)]);
  }
  return out;
}

Outputs<double> brute_force(const ParticleSet<float>& parts, const KernelSpec& kernel) {
  return brute_force(parts, kernel, cutoff_pairs(parts, kernel.cutoff));
}

Outputs<double> brute_force(const ParticleSet<float>& parts, const KernelSpec& kernel,
                            const CutoffPairs& pairs) {
  kernel.validate();
  const std::size_t n = parts.size();
  if (pairs.size() != n) throw ConfigError("cutoff pairs do not match the particle set");
  Outputs<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ki = static_cast<Eigen::Index>(i);
    const Vec3<double> pi = parts.position(i).cast<double>();
    const double qi = parts.param[ki];
    long double fx = 0, fy = 0, fz = 0, pot = 0;
    for (std::int64_t e = pairs.offsets[i]; e < pairs.offsets[i + 1]; ++e) {
      const auto j = static_cast<std::size_t>(pairs.neighbors[static_cast<std::size_t>(e)]);
      const auto c = pair_contribution<double>(pi, qi, parts.position(j).cast<double>(),
                                               parts.param[static_cast<Eigen::Index>(j)], kernel);
      fx += c.force.x();
      fy += c.force.y();
      fz += c.force.z();
      pot += c.potential;
    }
    out.fx[ki] = static_cast<double>(fx);
    out.fy[ki] = static_cast<double>(fy);
    out.fz[ki] = static_cast<double>(fz);
    out.pot[ki] = static_cast<double>(pot);
  }
  return out;
}

}  // namespace cellpair
