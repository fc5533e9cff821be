#pragma once

#include "cellpair/strategies.hpp"

namespace cellpair {

inline constexpr double kRelativeFloor = 1e-6;

/// Largest per-particle relative error of `got` against `ref`. For each
/// particle the force error is |F_got - F_ref| / max(|F_ref|, floor) and the
/// potential error is |p_got - p_ref| / max(|p_ref|, floor).
double max_relative_error(const Outputs<float>& got, const Outputs<double>& ref,
                          double floor = kRelativeFloor);
double max_relative_error(const Outputs<float>& got, const Outputs<float>& ref,
                          double floor = kRelativeFloor);

}  // namespace cellpair
