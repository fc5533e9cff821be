#include "cellpair/gpumodel.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cellpair {

namespace {

using nlohmann::json;

DeviceProfile make_profile(std::string name, int warp, std::int64_t smem_block,
                           std::int64_t smem_sm, int threads_sm, int blocks_sm, int sms) {
  DeviceProfile p;
  p.name = std::move(name);
  p.warp_size = warp;
  p.shared_mem_per_block = smem_block;
  p.shared_mem_per_sm = smem_sm;
  p.max_threads_per_block = 1024;
  p.max_threads_per_sm = threads_sm;
  p.max_blocks_per_sm = blocks_sm;
  p.num_sms = sms;
  p.transaction_bytes = 128;
  p.bytes_per_particle = 32;
  return p;
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) throw ConfigError(std::string("device profile is missing '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("device profile field '") + key + "' must be an integer");
  }
  out = v.get<T>();
}

}  // namespace

void DeviceProfile::validate() const {
  if (warp_size <= 0 || shared_mem_per_block <= 0 || shared_mem_per_sm <= 0 ||
      max_threads_per_block <= 0 || max_threads_per_sm <= 0 || max_blocks_per_sm <= 0 ||
      num_sms <= 0 || transaction_bytes <= 0 || bytes_per_particle <= 0) {
    throw ConfigError("device profile '" + name + "': all limits must be positive");
  }
  if (max_threads_per_block % warp_size != 0) {
    throw ConfigError("device profile '" + name + "': warp size must divide max_threads_per_block");
  }
}

DeviceProfile device_preset(std::string_view name) {
  // Shared memory and multiprocessor counts as published for each GPU; per-SM
  // thread and block limits are the vendors' standard values for the architecture.
  if (name == "t600") return make_profile("t600", 32, 49152, 49152, 1024, 16, 40);
  if (name == "a100") return make_profile("a100", 32, 49152, 49152, 2048, 32, 108);
  if (name == "mi210") return make_profile("mi210", 64, 65536, 65536, 2048, 32, 104);
  throw ConfigError("unknown device preset '" + std::string(name) + "'");
}

std::vector<std::string> device_preset_names() { return {"t600", "a100", "mi210"}; }

DeviceProfile parse_device_profile(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("device profile is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("device profile must be a JSON object");
  DeviceProfile p;
  if (j.contains("name")) p.name = j.at("name").get<std::string>();
  read_field(j, "warp_size", p.warp_size);
  read_field(j, "shared_mem_per_block", p.shared_mem_per_block);
  read_field(j, "shared_mem_per_sm", p.shared_mem_per_sm);
  read_field(j, "max_threads_per_block", p.max_threads_per_block);
  read_field(j, "max_threads_per_sm", p.max_threads_per_sm);
  read_field(j, "max_blocks_per_sm", p.max_blocks_per_sm);
  read_field(j, "num_sms", p.num_sms);
  read_field(j, "transaction_bytes", p.transaction_bytes);
  read_field(j, "bytes_per_particle", p.bytes_per_particle);
  p.validate();
  return p;
}

DeviceProfile load_device_profile(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open device profile '" + file.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_device_profile(ss.str());
}

std::string device_profile_to_json(const DeviceProfile& p) {
  json j{{"name", p.name},
         {"warp_size", p.warp_size},
         {"shared_mem_per_block", p.shared_mem_per_block},
         {"shared_mem_per_sm", p.shared_mem_per_sm},
         {"max_threads_per_block", p.max_threads_per_block},
         {"max_threads_per_sm", p.max_threads_per_sm},
         {"max_blocks_per_sm", p.max_blocks_per_sm},
         {"num_sms", p.num_sms},
         {"transaction_bytes", p.transaction_bytes},
         {"bytes_per_particle", p.bytes_per_particle}};
  return j.dump(2);
}

DeviceProfile resolve_device_profile(std::string_view name_or_path) {
  const auto presets = device_preset_names();
  if (std::find(presets.begin(), presets.end(), name_or_path) != presets.end()) {
    return device_preset(name_or_path);
  }
  return load_device_profile(std::filesystem::path(name_or_path));
}

void LaunchConfig::validate(const DeviceProfile& profile) const {
  if (threads_per_block < 1 || threads_per_block > profile.max_threads_per_block) {
    throw ConfigError("launch uses " + std::to_string(threads_per_block) +
                      " threads per block; the device allows 1.." +
                      std::to_string(profile.max_threads_per_block));
  }
  if (dynamic_shared_bytes < 0 || dynamic_shared_bytes > profile.shared_mem_per_block) {
    throw ConfigError("launch requests " + std::to_string(dynamic_shared_bytes) +
                      " shared bytes per block; the device allows " +
                      std::to_string(profile.shared_mem_per_block));
  }
  if (blocks < 0) throw ConfigError("negative block count");
}

TrafficCounters& TrafficCounters::operator+=(const TrafficCounters& o) {
  global_particle_loads += o.global_particle_loads;
  global_particle_stores += o.global_particle_stores;
  shared_loads += o.shared_loads;
  shared_stores += o.shared_stores;
  sync_count += o.sync_count;
  interactions += o.interactions;
  idle_lane_iterations += o.idle_lane_iterations;
  global_transactions += o.global_transactions;
  return *this;
}

Occupancy theoretical_occupancy(const DeviceProfile& profile, const LaunchConfig& launch) {
  profile.validate();
  launch.validate(profile);
  const std::int64_t by_smem =
      profile.shared_mem_per_sm / std::max<std::int64_t>(1, launch.dynamic_shared_bytes);
  const std::int64_t by_threads = profile.max_threads_per_sm / launch.threads_per_block;
  const std::int64_t blocks =
      std::min({by_smem, by_threads, static_cast<std::int64_t>(profile.max_blocks_per_sm)});
  Occupancy o;
  o.blocks_per_sm = static_cast<int>(blocks);
  o.occupancy = std::min(1.0, static_cast<double>(blocks) * launch.threads_per_block /
                                  profile.max_threads_per_sm);
  return o;
}

std::int64_t coalesced_transactions(std::span<const std::uint64_t> byte_addresses,
                                    int transaction_bytes) {
  if (byte_addresses.empty()) return 0;
  const auto width = static_cast<std::uint64_t>(transaction_bytes);
  std::uint64_t segs[64];
  std::vector<std::uint64_t> spill;
  std::uint64_t* seg = segs;
  if (byte_addresses.size() > 64) {
    spill.resize(byte_addresses.size());
    seg = spill.data();
  }
  for (std::size_t k = 0; k < byte_addresses.size(); ++k) seg[k] = byte_addresses[k] / width;
  std::sort(seg, seg + byte_addresses.size());
  return std::unique(seg, seg + byte_addresses.size()) - seg;
}

std::int64_t particle_load_transactions(std::span<const std::int64_t> slots,
                                        int transaction_bytes) {
  std::uint64_t addrs[64];
  std::vector<std::uint64_t> spill;
  std::uint64_t* a = addrs;
  if (slots.size() > 64) {
    spill.resize(slots.size());
    a = spill.data();
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    a[k] = static_cast<std::uint64_t>(slots[k]) * sizeof(float);
  }
  return coalesced_transactions({a, slots.size()}, transaction_bytes);
}

std::int64_t strided_copy_transactions(std::span<const std::int64_t> slots, int threads,
                                       int warp_size, int transaction_bytes) {
  std::int64_t total = 0;
  const auto n = static_cast<std::int64_t>(slots.size());
  for (std::int64_t round = 0; round < n; round += threads) {
    const std::int64_t round_end = std::min(n, round + threads);
    for (std::int64_t w = round; w < round_end; w += warp_size) {
      const std::int64_t w_end = std::min(round_end, w + warp_size);
      total += particle_load_transactions(slots.subspan(static_cast<std::size_t>(w),
                                                        static_cast<std::size_t>(w_end - w)),
                                          transaction_bytes);
    }
  }
  return total;
}

}  // namespace cellpair
