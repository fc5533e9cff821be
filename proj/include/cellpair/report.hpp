#pragma once

// One row per (scenario, strategy) and its CSV / JSON serialization.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellpair {

struct ReportRow {
  std::string scenario;
  int divisions = 0;
  int avg_per_cell = 0;
  std::uint64_t seed = 0;
  std::int64_t n_particles = 0;
  std::string kernel;
  std::string profile;
  std::string strategy;
  bool applicable = false;
  std::string reason;            // why the strategy was not applicable
  std::string comparison_basis;  // "oracle" or "par_part_noloop"
  std::optional<double> max_rel_error;
  std::optional<double> interactions_per_particle;
  std::optional<std::int64_t> global_particle_loads;
  std::optional<std::int64_t> global_particle_stores;
  std::optional<std::int64_t> shared_loads;
  std::optional<std::int64_t> shared_stores;
  std::optional<std::int64_t> sync_count;
  std::optional<std::int64_t> interactions;
  std::optional<std::int64_t> idle_lane_iterations;
  std::optional<std::int64_t> global_transactions;
  std::optional<std::int64_t> blocks;
  std::optional<std::int64_t> threads_per_block;
  std::optional<std::int64_t> dynamic_shared_bytes;
  std::optional<std::int64_t> blocks_per_sm;
  std::optional<double> occupancy;
  /// Global particle loads relative to Par-Part-NoLoop on the same scene.
  std::optional<double> load_ratio;
  double wall_time_s = 0.0;  // informational

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Calls f(name, field) for every ReportRow field in declaration order.
template <typename Row, typename F>
void for_each_field(Row& r, F&& f) {
  f("scenario", r.scenario);
  f("divisions", r.divisions);
  f("avg_per_cell", r.avg_per_cell);
  f("seed", r.seed);
  f("n_particles", r.n_particles);
  f("kernel", r.kernel);
  f("profile", r.profile);
  f("strategy", r.strategy);
  f("applicable", r.applicable);
  f("reason", r.reason);
  f("comparison_basis", r.comparison_basis);
  f("max_rel_error", r.max_rel_error);
  f("interactions_per_particle", r.interactions_per_particle);
  f("global_particle_loads", r.global_particle_loads);
  f("global_particle_stores", r.global_particle_stores);
  f("shared_loads", r.shared_loads);
  f("shared_stores", r.shared_stores);
  f("sync_count", r.sync_count);
  f("interactions", r.interactions);
  f("idle_lane_iterations", r.idle_lane_iterations);
  f("global_transactions", r.global_transactions);
  f("blocks", r.blocks);
  f("threads_per_block", r.threads_per_block);
  f("dynamic_shared_bytes", r.dynamic_shared_bytes);
  f("blocks_per_sm", r.blocks_per_sm);
  f("occupancy", r.occupancy);
  f("load_ratio", r.load_ratio);
  f("wall_time_s", r.wall_time_s);
}

std::vector<std::string> report_columns();

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view name);

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& os);
void emit_json(const std::vector<ReportRow>& rows, std::ostream& os);
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, std::ostream& os);
/// Throws std::runtime_error when the file cannot be written.
void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  const std::filesystem::path& path);

std::vector<ReportRow> parse_csv(std::string_view text);
std::vector<ReportRow> parse_json(std::string_view text);
/// Picks the parser from the first non-blank character.
std::vector<ReportRow> parse_report(std::string_view text);
std::vector<ReportRow> read_report(const std::filesystem::path& path);

}  // namespace cellpair
