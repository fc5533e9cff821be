#include "cellpair/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cellpair {

namespace {

template <typename R>
double max_error(const Outputs<float>& got, const Outputs<R>& ref, double floor) {
  if (got.size() != ref.size()) throw ConfigError("output sizes differ");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(got.size()); ++i) {
    const Vec3<double> g{got.fx[i], got.fy[i], got.fz[i]};
    const Vec3<double> r{static_cast<double>(ref.fx[i]), static_cast<double>(ref.fy[i]),
                         static_cast<double>(ref.fz[i])};
    const double force = (g - r).norm() / std::max(r.norm(), floor);
    const double rp = static_cast<double>(ref.pot[i]);
    const double pot = std::abs(static_cast<double>(got.pot[i]) - rp) / std::max(std::abs(rp), floor);
    // NaN propagates as a failure rather than being swallowed by max.
    if (std::isnan(force) || std::isnan(pot)) return std::numeric_limits<double>::infinity();
    worst = std::max({worst, force, pot});
  }
  return worst;
}

}  // namespace

double max_relative_error(const Outputs<float>& got, const Outputs<double>& ref, double floor) {
  return max_error(got, ref, floor);
}

double max_relative_error(const Outputs<float>& got, const Outputs<float>& ref, double floor) {
  return max_error(got, ref, floor);
}

}  // namespace cellpair
