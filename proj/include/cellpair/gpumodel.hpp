#pragma once

// Simulated SIMT device: resource limits, launch shapes, traffic counters,
// occupancy and coalescing analysis.

#include "cellpair/core.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cellpair {

struct DeviceProfile {
  std::string name = "custom";
  int warp_size = 32;
  std::int64_t shared_mem_per_block = 49152;
  std::int64_t shared_mem_per_sm = 49152;
  int max_threads_per_block = 1024;
  int max_threads_per_sm = 1024;
  int max_blocks_per_sm = 16;
  int num_sms = 40;
  int transaction_bytes = 128;
  int bytes_per_particle = 32;

  void validate() const;
};

/// Presets "t600", "a100", "mi210".
DeviceProfile device_preset(std::string_view name);
std::vector<std::string> device_preset_names();

/// JSON object whose keys are the DeviceProfile field names. All numeric keys
/// are required; "name" is optional.
DeviceProfile parse_device_profile(std::string_view json_text);
DeviceProfile load_device_profile(const std::filesystem::path& file);
std::string device_profile_to_json(const DeviceProfile& p);

/// A preset name, or else a path to a profile file.
DeviceProfile resolve_device_profile(std::string_view name_or_path);

/// All-in-SM shape. Box dims include the one-cell ghost shell.
struct SubBoxConfig {
  Index3 box_dims{0, 0, 0};
  Index3 interior_dims{0, 0, 0};
  std::int64_t bytes_per_cell = 0;  // M_C * bytes_per_particle
  int threads = 0;
  std::int64_t blocks = 0;

  friend bool operator==(const SubBoxConfig&, const SubBoxConfig&) = default;
};

/// X-pencil shape. total_len counts the two ghost cells.
struct PencilConfig {
  int total_len = 0;
  int interior_len = 0;
  int threads = 0;
  std::int64_t blocks = 0;

  friend bool operator==(const PencilConfig&, const PencilConfig&) = default;
};

/// X-pencil-reg shape: a box of target cells held in registers, sources staged
/// one X-pencil (target_dims[0] + 2 cells) at a time.
struct RegisterBoxConfig {
  Index3 target_dims{0, 0, 0};
  int pencil_total_len = 0;
  int threads = 0;
  std::int64_t blocks = 0;

  friend bool operator==(const RegisterBoxConfig&, const RegisterBoxConfig&) = default;
};

using StrategyParams = std::variant<std::monostate, SubBoxConfig, PencilConfig, RegisterBoxConfig>;

struct LaunchConfig {
  std::int64_t blocks = 0;
  int threads_per_block = 0;
  std::int64_t dynamic_shared_bytes = 0;
  StrategyParams strategy_params;

  /// Throws ConfigError when the launch exceeds the profile's per-block limits.
  void validate(const DeviceProfile& profile) const;
};

/// Counters in units of whole particle records.
struct TrafficCounters {
  std::int64_t global_particle_loads = 0;
  std::int64_t global_particle_stores = 0;
  std::int64_t shared_loads = 0;
  std::int64_t shared_stores = 0;
  std::int64_t sync_count = 0;
  std::int64_t interactions = 0;
  std::int64_t idle_lane_iterations = 0;
  std::int64_t global_transactions = 0;

  TrafficCounters& operator+=(const TrafficCounters& o);
  friend TrafficCounters operator+(TrafficCounters a, const TrafficCounters& b) { return a += b; }
  friend bool operator==(const TrafficCounters&, const TrafficCounters&) = default;
};

struct Occupancy {
  int blocks_per_sm = 0;
  double occupancy = 0.0;
};

Occupancy theoretical_occupancy(const DeviceProfile& profile, const LaunchConfig& launch);

/// Distinct aligned transaction_bytes segments touched by one warp-wide access.
std::int64_t coalesced_transactions(std::span<const std::uint64_t> byte_addresses,
                                    int transaction_bytes);

/// Transactions for a warp reading pos_x of the given sorted particle slots.
std::int64_t particle_load_transactions(std::span<const std::int64_t> slots,
                                        int transaction_bytes);

/// Transactions for `threads` lanes copying `slots[k]` with thread k % threads,
/// one warp instruction per (round, warp).
std::int64_t strided_copy_transactions(std::span<const std::int64_t> slots, int threads,
                                       int warp_size, int transaction_bytes);

}  // namespace cellpair
