#include "cellpair/kernels.hpp"

namespace cellpair {

void KernelSpec::validate() const {
  if (!(cutoff > 0.0)) throw ConfigError("kernel cutoff must be positive");
  if (!(softening >= 0.0)) throw ConfigError("kernel softening must be non-negative");
  if (!(ref_length > 0.0)) throw ConfigError("kernel reference length must be positive");
}

KernelSpec make_kernel(KernelKind kind) {
  KernelSpec k;
  k.kind = kind;
  switch (kind) {
    case KernelKind::lennard_jones: k.flop_per_interaction = 21; break;
    case KernelKind::low_flop: k.flop_per_interaction = 5; break;
    case KernelKind::high_flop: k.flop_per_interaction = 168; break;
  }
  return k;
}

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::lennard_jones: return "lj";
    case KernelKind::low_flop: return "low";
    case KernelKind::high_flop: return "high";
  }
  return "?";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "lj" || name == "lennard_jones") return KernelKind::lennard_jones;
  if (name == "low" || name == "low_flop") return KernelKind::low_flop;
  if (name == "high" || name == "high_flop") return KernelKind::high_flop;
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

}  // namespace cellpair
