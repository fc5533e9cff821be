#include "cellpair/gpumodel.hpp"

#include <doctest.h>

#include <numeric>

using namespace cellpair;

namespace {

LaunchConfig launch(int threads, std::int64_t smem) {
  LaunchConfig l;
  l.blocks = 1;
  l.threads_per_block = threads;
  l.dynamic_shared_bytes = smem;
  return l;
}

}  // namespace

TEST_CASE("presets exist and validate") {
  for (const auto& name : device_preset_names()) {
    const DeviceProfile p = device_preset(name);
    CHECK(p.name == name);
    CHECK_NOTHROW(p.validate());
  }
  CHECK(device_preset("t600").shared_mem_per_block == 49152);
  CHECK(device_preset("t600").num_sms == 40);
  CHECK(device_preset("mi210").warp_size == 64);
  CHECK_THROWS_AS(device_preset("v100"), ConfigError);
}

TEST_CASE("occupancy: shared memory limits resident blocks") {
  const DeviceProfile p = device_preset("t600");
  const Occupancy three = theoretical_occupancy(p, launch(128, 13824));
  CHECK(three.blocks_per_sm == 3);
  CHECK(three.occupancy == doctest::Approx(0.375));
  const Occupancy one = theoretical_occupancy(p, launch(128, 49152));
  CHECK(one.blocks_per_sm == 1);
}

TEST_CASE("occupancy: thread and block limits") {
  const DeviceProfile p = device_preset("t600");
  CHECK(theoretical_occupancy(p, launch(1024, 0)).blocks_per_sm == 1);
  CHECK(theoretical_occupancy(p, launch(1024, 0)).occupancy == doctest::Approx(1.0));
  CHECK(theoretical_occupancy(p, launch(32, 0)).blocks_per_sm == 16);
  CHECK(theoretical_occupancy(p, launch(32, 0)).occupancy == doctest::Approx(0.5));
  // 640 threads leave room for one block only: occupancy drops when threads grow.
  CHECK(theoretical_occupancy(p, launch(512, 0)).occupancy == doctest::Approx(1.0));
  CHECK(theoretical_occupancy(p, launch(640, 0)).occupancy == doctest::Approx(0.625));
}

TEST_CASE("launch validation rejects oversize blocks") {
  const DeviceProfile p = device_preset("t600");
  CHECK_THROWS_AS(launch(2048, 0).validate(p), ConfigError);
  CHECK_THROWS_AS(launch(0, 0).validate(p), ConfigError);
  CHECK_THROWS_AS(launch(128, 49153).validate(p), ConfigError);
  CHECK_NOTHROW(launch(1024, 49152).validate(p));
}

TEST_CASE("coalescing counts distinct aligned segments") {
  std::vector<std::int64_t> contiguous(32);
  std::iota(contiguous.begin(), contiguous.end(), 0);
  CHECK(particle_load_transactions(contiguous, 128) == 1);

  std::vector<std::int64_t> shifted(32);
  std::iota(shifted.begin(), shifted.end(), 16);
  CHECK(particle_load_transactions(shifted, 128) == 2);

  std::vector<std::int64_t> strided(32);
  for (int k = 0; k < 32; ++k) strided[static_cast<std::size_t>(k)] = 32 * k;
  CHECK(particle_load_transactions(strided, 128) == 32);

  const std::vector<std::int64_t> broadcast(32, 7);
  CHECK(particle_load_transactions(broadcast, 128) == 1);
  CHECK(particle_load_transactions(std::vector<std::int64_t>{}, 128) == 0);

  const std::vector<std::uint64_t> bytes{0, 127, 128, 4096};
  CHECK(coalesced_transactions(bytes, 128) == 3);
  CHECK(coalesced_transactions(bytes, 32) == 4);
}

TEST_CASE("strided copies issue one access per warp and round") {
  std::vector<std::int64_t> slots(100);
  std::iota(slots.begin(), slots.end(), 0);
  CHECK(strided_copy_transactions(slots, 64, 32, 128) == 4);
  CHECK(strided_copy_transactions(slots, 1024, 32, 128) == 4);
  CHECK(strided_copy_transactions(slots, 16, 32, 128) == 7);
}

TEST_CASE("device profile JSON round trip and errors") {
  const DeviceProfile a = device_preset("a100");
  const DeviceProfile b = parse_device_profile(device_profile_to_json(a));
  CHECK(b.name == a.name);
  CHECK(b.max_threads_per_sm == a.max_threads_per_sm);
  CHECK(b.shared_mem_per_sm == a.shared_mem_per_sm);
  CHECK(b.num_sms == a.num_sms);

  CHECK_THROWS_AS(parse_device_profile("{"), ConfigError);
  CHECK_THROWS_AS(parse_device_profile("[]"), ConfigError);
  CHECK_THROWS_AS(parse_device_profile(R"({"warp_size": 32})"), ConfigError);
  std::string text = device_profile_to_json(a);
  text.replace(text.find("\"num_sms\": 108"), 14, "\"num_sms\": 0");
  CHECK_THROWS_AS(parse_device_profile(text), ConfigError);
  CHECK_THROWS_AS(resolve_device_profile("/nonexistent/profile.json"), ConfigError);
}

TEST_CASE("traffic counters add field by field") {
  TrafficCounters a;
  a.global_particle_loads = 3;
  a.sync_count = 1;
  TrafficCounters b;
  b.global_particle_loads = 4;
  b.interactions = 9;
  const TrafficCounters c = a + b;
  CHECK(c.global_particle_loads == 7);
  CHECK(c.sync_count == 1);
  CHECK(c.interactions == 9);
}
