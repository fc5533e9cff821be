#pragma once

#include "cellpair/core.hpp"

#include <cmath>
#include <string>
#include <string_view>

namespace cellpair {

enum class KernelKind { lennard_jones, low_flop, high_flop };

/// Pairwise kernel parameters. FLOP counts are reporting metadata only.
struct KernelSpec {
  KernelKind kind = KernelKind::lennard_jones;
  double cutoff = 1.0;       // r_c, compared against the unsoftened distance
  double softening = 0.05;   // epsilon
  double e0 = 1.0;           // E_0
  double ref_length = 1.0;   // r
  int flop_per_interaction = 21;
  /// false: 4 E0 ((d/r)^12 - (d/r)^6); true: the textbook 4 E0 ((r/d)^12 - (r/d)^6).
  bool inverted_ratio = false;

  void validate() const;
};

/// Default parameters for a kind, with its FLOP metadata (21, 5, 168).
KernelSpec make_kernel(KernelKind kind);

std::string_view to_string(KernelKind kind);
/// Accepts "lj", "low", "high" and the full enumerator names.
KernelKind parse_kernel_kind(std::string_view name);

template <typename Scalar>
struct PairContribution {
  Vec3<Scalar> force = Vec3<Scalar>::Zero();
  Scalar potential = Scalar(0);
};

/// Number of fixed multiply-add steps appended by the high-FLOP kernel (3 FLOP each).
inline constexpr int kHighFlopChainSteps = 50;

namespace detail {

// Returns (K, dK/dd~) for the softened distance ds.
template <typename Scalar>
inline void lj_value_and_slope(Scalar ds, const KernelSpec& k, Scalar e0, Scalar& value,
                               Scalar& slope) {
  const Scalar r = static_cast<Scalar>(k.ref_length);
  const Scalar four_e0 = Scalar(4) * e0;
  if (!k.inverted_ratio) {
    const Scalar x = ds / r;
    const Scalar x2 = x * x;
    const Scalar x6 = x2 * x2 * x2;
    const Scalar x12 = x6 * x6;
    value = four_e0 * (x12 - x6);
    // d/dds of x^n is n x^n / ds
    slope = four_e0 * (Scalar(12) * x12 - Scalar(6) * x6) / ds;
  } else {
    const Scalar x = r / ds;
    const Scalar x2 = x * x;
    const Scalar x6 = x2 * x2 * x2;
    const Scalar x12 = x6 * x6;
    value = four_e0 * (x12 - x6);
    slope = four_e0 * (Scalar(-12) * x12 + Scalar(6) * x6) / ds;
  }
}

}  // namespace detail

/// |a - b| < cutoff, evaluated in double precision.
template <typename Scalar>
inline bool within_cutoff(const Vec3<Scalar>& a, const Vec3<Scalar>& b, double cutoff) {
  const double dx = static_cast<double>(a.x()) - static_cast<double>(b.x());
  const double dy = static_cast<double>(a.y()) - static_cast<double>(b.y());
  const double dz = static_cast<double>(a.z()) - static_cast<double>(b.z());
  return dx * dx + dy * dy + dz * dz < cutoff * cutoff;
}

/// Contribution of `source` to `target`. Zero at or beyond the cutoff.
template <typename Scalar>
PairContribution<Scalar> pair_contribution(const Vec3<Scalar>& target_pos, Scalar target_param,
                                           const Vec3<Scalar>& source_pos, Scalar source_param,
                                           const KernelSpec& k) {
  PairContribution<Scalar> out;
  // The cutoff test runs in double so that every precision agrees on which
  // pairs interact; a float d^2 can land on either side of r_c^2.
  if (!within_cutoff(target_pos, source_pos, k.cutoff)) return out;
  const Vec3<Scalar> delta = target_pos - source_pos;
  const Scalar d2 = delta.squaredNorm();

  if (k.kind == KernelKind::low_flop) {
    out.force = source_pos;
    out.potential = source_pos.x() + source_pos.y() + source_pos.z();
    return out;
  }

  const Scalar eps = static_cast<Scalar>(k.softening);
  const Scalar ds2 = d2 + eps * eps;
  if (ds2 == Scalar(0)) return out;  // coincident and unsoftened
  const Scalar ds = std::sqrt(ds2);
  const Scalar e0 = static_cast<Scalar>(k.e0) * target_param * source_param;

  Scalar value{}, slope{};
  detail::lj_value_and_slope(ds, k, e0, value, slope);
  out.force = delta * (-slope / ds);

  if (k.kind == KernelKind::high_flop) {
    // Contracting chain with fixed point `value`; only adds arithmetic.
    Scalar acc = value;
    const Scalar half = Scalar(0.5);
    for (int s = 0; s < kHighFlopChainSteps; ++s) acc = half * acc + half * value;
    value = acc;
  }
  out.potential = value;
  return out;
}

}  // namespace cellpair
