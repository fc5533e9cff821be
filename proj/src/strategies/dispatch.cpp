#include "cellpair/strategies.hpp"

#include <array>
#include <string>

namespace cellpair {

namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 7> kNames{{
    {Strategy::par_part_noloop, "par_part_noloop"},
    {Strategy::par_part_loop, "par_part_loop"},
    {Strategy::par_cell, "par_cell"},
    {Strategy::par_cell_sm, "par_cell_sm"},
    {Strategy::all_in_sm, "all_in_sm"},
    {Strategy::xpencil, "xpencil"},
    {Strategy::xpencil_reg, "xpencil_reg"},
}};

}  // namespace

std::string_view to_string(Strategy s) {
  for (const auto& [k, name] : kNames) {
    if (k == s) return name;
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

std::vector<Strategy> all_strategies() {
  std::vector<Strategy> out;
  for (const auto& entry : kNames) out.push_back(entry.first);
  return out;
}

StrategyOutcome run_strategy(Strategy s, const Scene& scene, const KernelSpec& kernel,
                             const DeviceProfile& profile, const StrategyOptions& opts) {
  switch (s) {
    case Strategy::par_part_noloop: return run_par_part_noloop(scene, kernel, profile);
    case Strategy::par_part_loop: return run_par_part_loop(scene, kernel, profile, opts);
    case Strategy::par_cell: return run_par_cell(scene, kernel, profile, opts);
    case Strategy::par_cell_sm: return run_par_cell_sm(scene, kernel, profile, opts);
    case Strategy::all_in_sm: return run_all_in_sm(scene, kernel, profile);
    case Strategy::xpencil: return run_xpencil(scene, kernel, profile, opts);
    case Strategy::xpencil_reg: return run_xpencil_reg(scene, kernel, profile, opts);
  }
  throw ConfigError("unknown strategy");
}

}  // namespace cellpair
