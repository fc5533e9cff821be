#pragma once

// O(N^2) reference: every ordered pair i != j closer than the cutoff,
// evaluated in double precision and summed in extended precision.

#include "cellpair/core.hpp"
#include "cellpair/kernels.hpp"
#include "cellpair/strategies.hpp"

#include <cstdint>
#include <vector>

namespace cellpair {

/// Cutoff neighbor lists in CSR form; the row of i lists every j != i with
/// |p_i - p_j| < cutoff in ascending order.
struct CutoffPairs {
  std::vector<std::int64_t> offsets;  // size N + 1
  std::vector<std::int32_t> neighbors;

  [[nodiscard]] std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  [[nodiscard]] std::int64_t pair_count() const { return static_cast<std::int64_t>(neighbors.size()); }
};

/// All-pairs distance test in double precision; no grid involved.
CutoffPairs cutoff_pairs(const ParticleSet<float>& parts, double cutoff);

Outputs<double> brute_force(const ParticleSet<float>& parts, const KernelSpec& kernel);

/// Same result from precomputed lists, which must come from the same
/// particles and the kernel's cutoff.
Outputs<double> brute_force(const ParticleSet<float>& parts, const KernelSpec& kernel,
                            const CutoffPairs& pairs);

}  // namespace cellpair
