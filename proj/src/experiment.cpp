#include "cellpair/experiment.hpp"

#include "cellpair/compare.hpp"
#include "cellpair/oracle.hpp"

#include <chrono>
#include <cmath>
#include <optional>

namespace cellpair {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

void fill_counters(ReportRow& row, const TrafficCounters& c) {
  row.global_particle_loads = c.global_particle_loads;
  row.global_particle_stores = c.global_particle_stores;
  row.shared_loads = c.shared_loads;
  row.shared_stores = c.shared_stores;
  row.sync_count = c.sync_count;
  row.interactions = c.interactions;
  row.idle_lane_iterations = c.idle_lane_iterations;
  row.global_transactions = c.global_transactions;
}

}  // namespace

std::string Scenario::id() const {
  return "d" + std::to_string(divisions) + "-a" + std::to_string(avg_per_cell) + "-s" + std::to_string(seed);
}

std::int64_t Scenario::particle_count() const {
  return static_cast<std::int64_t>(avg_per_cell) * divisions * divisions * divisions;
}

void Scenario::validate() const {
  if (divisions < 2) throw ConfigError("divisions must be at least 2");
  if (avg_per_cell < 1) throw ConfigError("avg-per-cell must be at least 1");
  if (particle_count() > (std::int64_t{1} << 31) - 1) throw ConfigError("scenario has too many particles");
}

std::vector<Scenario> ExperimentConfig::scenarios() const {
  std::vector<Scenario> out;
  for (int d : divisions) {
    for (int a : avg_per_cell) out.push_back({d, a, seed});
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (divisions.empty() || avg_per_cell.empty()) throw ConfigError("no scenarios requested");
  for (const Scenario& s : scenarios()) s.validate();
  if (strategies.empty()) throw ConfigError("at least one strategy is required");
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  profile.validate();
}

ParticleSet<float> generate_particles(const Scenario& s) {
  s.validate();
  const auto n = static_cast<std::size_t>(s.particle_count());
  const std::uint64_t key =
      splitmix64(s.seed ^ splitmix64((static_cast<std::uint64_t>(s.divisions) << 32) |
                                     static_cast<std::uint32_t>(s.avg_per_cell)));
  const double extent = s.divisions;
  const float top = std::nextafter(static_cast<float>(extent), 0.0f);
  ParticleSet<float> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec3<float> pos;
    for (int a = 0; a < 3; ++a) {
      const std::uint64_t bits = splitmix64(key + 3 * static_cast<std::uint64_t>(i) + static_cast<std::uint64_t>(a));
      pos[a] = std::min(static_cast<float>(unit_double(bits) * extent), top);
    }
    p.set_position(i, pos);
  }
  p.param.setOnes();
  return p;
}

GridSpec scenario_grid(const Scenario& s) {
  GridSpec g;
  g.dims = {s.divisions, s.divisions, s.divisions};
  g.cell_width = 1.0;
  return g;
}

KernelSpec scenario_kernel(KernelKind kind) { return make_kernel(kind); }

bool row_failed(const ReportRow& row, double tolerance) {
  return row.applicable && (!row.max_rel_error || !(*row.max_rel_error <= tolerance));
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  const KernelSpec kernel = scenario_kernel(config.kernel);
  std::vector<ReportRow> rows;

  for (const Scenario& scenario : config.scenarios()) {
    const ParticleSet<float> parts = generate_particles(scenario);
    const Scene scene = make_scene(parts, scenario_grid(scenario));
    const auto n = static_cast<double>(parts.size());

    const auto baseline = std::get<StrategyResult>(run_par_part_noloop(scene, kernel, config.profile));
    const bool use_oracle = scenario.divisions <= config.oracle_max_divisions;
    std::optional<Outputs<double>> oracle;
    if (use_oracle) oracle = brute_force(parts, kernel);

    for (Strategy s : config.strategies) {
      ReportRow row;
      row.scenario = scenario.id();
      row.divisions = scenario.divisions;
      row.avg_per_cell = scenario.avg_per_cell;
      row.seed = scenario.seed;
      row.n_particles = static_cast<std::int64_t>(parts.size());
      row.kernel = std::string(to_string(config.kernel));
      row.profile = config.profile_name;
      row.strategy = std::string(to_string(s));
      row.comparison_basis = use_oracle ? "oracle" : "par_part_noloop";

      std::optional<StrategyResult> first;
      double seconds = 0.0;
      try {
        for (int r = 0; r < config.repeats; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          StrategyOutcome outcome = run_strategy(s, scene, kernel, config.profile);
          seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          if (const auto* u = std::get_if<Unavailable>(&outcome)) {
            row.reason = u->reason;
            break;
          }
          auto& result = std::get<StrategyResult>(outcome);
          if (!first) {
            first = std::move(result);
          } else if (!(result.counters == first->counters) || !(result.outputs == first->outputs)) {
            throw std::runtime_error("strategy " + row.strategy + " is not deterministic across repeats");
          }
        }
      } catch (const ConfigError& e) {
        row.reason = e.what();
        first.reset();
      }

      if (first) {
        row.applicable = true;
        row.max_rel_error = use_oracle ? max_relative_error(first->outputs, *oracle)
                                       : max_relative_error(first->outputs, baseline.outputs);
        row.interactions_per_particle = n > 0 ? static_cast<double>(first->counters.interactions) / n : 0.0;
        fill_counters(row, first->counters);
        row.blocks = first->launch.blocks;
        row.threads_per_block = first->launch.threads_per_block;
        row.dynamic_shared_bytes = first->launch.dynamic_shared_bytes;
        const Occupancy occ = theoretical_occupancy(config.profile, first->launch);
        row.blocks_per_sm = occ.blocks_per_sm;
        row.occupancy = occ.occupancy;
        const auto base_loads = baseline.counters.global_particle_loads;
        if (base_loads > 0) {
          row.load_ratio = static_cast<double>(first->counters.global_particle_loads) / static_cast<double>(base_loads);
        }
        row.wall_time_s = seconds / config.repeats;
      }
      if (progress) progress(row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace cellpair
