#pragma once

// Scenario generation and the strategy sweep behind the command-line tool.

#include "cellpair/gpumodel.hpp"
#include "cellpair/kernels.hpp"
#include "cellpair/report.hpp"
#include "cellpair/strategies.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cellpair {

/// Correctness bound on max_rel_error for every applicable strategy.
inline constexpr double kCorrectnessTolerance = 1e-4;

struct Scenario {
  int divisions = 2;     // grid is d x d x d unit cells
  int avg_per_cell = 1;  // N = avg_per_cell * d^3
  std::uint64_t seed = 0;

  [[nodiscard]] std::string id() const;
  [[nodiscard]] std::int64_t particle_count() const;
  void validate() const;
};

struct ExperimentConfig {
  std::vector<int> divisions{2, 4, 8};
  std::vector<int> avg_per_cell{1, 10, 100};
  std::uint64_t seed = 1;
  std::vector<Strategy> strategies = all_strategies();
  KernelKind kernel = KernelKind::lennard_jones;
  std::string profile_name = "t600";
  DeviceProfile profile = device_preset("t600");
  int repeats = 1;
  /// Scenes with more divisions are checked against Par-Part-NoLoop instead
  /// of the O(N^2) oracle.
  int oracle_max_divisions = 8;

  [[nodiscard]] std::vector<Scenario> scenarios() const;
  void validate() const;
};

/// N uniform particles in [0, d)^3 with unit params, from a counter-based
/// generator keyed by the scenario. Bitwise reproducible.
ParticleSet<float> generate_particles(const Scenario& s);
GridSpec scenario_grid(const Scenario& s);

/// Kernel for a scenario: the kind's defaults with the cutoff at one cell width.
KernelSpec scenario_kernel(KernelKind kind);

using ProgressFn = std::function<void(const ReportRow&)>;

std::vector<ReportRow> run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

/// True when an applicable row exceeds the correctness tolerance.
bool row_failed(const ReportRow& row, double tolerance = kCorrectnessTolerance);

}  // namespace cellpair
