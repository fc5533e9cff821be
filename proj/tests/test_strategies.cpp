#include "cellpair/compare.hpp"
#include "cellpair/launchcfg.hpp"
#include "cellpair/oracle.hpp"
#include "cellpair/strategies.hpp"

#include "detail.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace cellpair;

namespace {

struct Case {
  Index3 dims;
  std::size_t n;
  unsigned seed;
};

const Case kCases[] = {
    {{2, 2, 2}, 8, 1},   {{3, 3, 3}, 270, 2}, {{4, 2, 3}, 240, 3},
    {{5, 4, 3}, 60, 4},  {{1, 1, 1}, 40, 5},  {{6, 1, 1}, 90, 6},
    {{4, 4, 4}, 1280, 7},
};

StrategyResult ok(StrategyOutcome o) {
  REQUIRE_MESSAGE(std::holds_alternative<StrategyResult>(o),
                  (std::holds_alternative<Unavailable>(o) ? std::get<Unavailable>(o).reason : ""));
  return std::get<StrategyResult>(std::move(o));
}

// Sum over particles of the particles in their clamped 27-cell neighborhood, minus themselves.
std::int64_t candidate_pairs(const Scene& s) {
  std::int64_t total = 0;
  for (int c = 0; c < static_cast<int>(s.grid.cell_count()); ++c) {
    std::int64_t around = 0;
    for (const CellCoord& nc : neighbor_cells(s.grid.coord(c), s.grid)) around += s.binning.count(s.grid.linear(nc));
    total += s.binning.count(c) * (around - 1);
  }
  return total;
}

}  // namespace

TEST_CASE("every strategy matches the oracle on small scenes") {
  const DeviceProfile profile = device_preset("t600");
  for (const Case& c : kCases) {
    const GridSpec g = test::unit_grid(c.dims);
    const auto parts = test::random_particles(c.n, c.dims, c.seed);
    const Scene scene = make_scene(parts, g);
    const std::int64_t pairs = candidate_pairs(scene);
    for (KernelKind kind : {KernelKind::lennard_jones, KernelKind::low_flop, KernelKind::high_flop}) {
      const KernelSpec k = make_kernel(kind);
      const auto oracle = brute_force(parts, k);
      for (Strategy s : all_strategies()) {
        CAPTURE(to_string(s));
        CAPTURE(c.seed);
        const auto& r = ok(run_strategy(s, scene, k, profile));
        CHECK(max_relative_error(r.outputs, oracle) <= 1e-4);
        CHECK(r.counters.interactions == pairs);
        CHECK(std::all_of(r.write_count.begin(), r.write_count.end(), [](auto w) { return w == 1; }));
        CHECK(std::all_of(r.writer_block.begin(), r.writer_block.end(),
                          [&](auto b) { return b >= 0 && b < r.launch.blocks; }));
        CHECK(r.counters.global_particle_stores == static_cast<std::int64_t>(c.n));
        CHECK(static_cast<std::int64_t>(r.block_counters.size()) == r.launch.blocks);
      }
    }
  }
}

TEST_CASE("grid-stride launches with fewer blocks give bitwise identical outputs") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({4, 3, 3});
  const Scene scene = make_scene(test::random_particles(700, g.dims, 9), g);
  const KernelSpec k = make_kernel(KernelKind::lennard_jones);

  const auto& noloop = ok(run_par_part_noloop(scene, k, profile));
  StrategyOptions few;
  few.blocks = 2;
  few.threads = 64;
  const auto& loop = ok(run_par_part_loop(scene, k, profile, few));
  CHECK(loop.outputs == noloop.outputs);
  CHECK(loop.counters.interactions == noloop.counters.interactions);
  CHECK(loop.launch.blocks == 2);

  const auto& cell = ok(run_par_cell(scene, k, profile));
  few.threads = 16;  // also forces several target chunks per cell
  const auto& cell_few = ok(run_par_cell(scene, k, profile, few));
  CHECK(cell_few.outputs == cell.outputs);
  const auto& sm = ok(run_par_cell_sm(scene, k, profile));
  const auto& sm_few = ok(run_par_cell_sm(scene, k, profile, few));
  CHECK(sm_few.outputs == sm.outputs);
  CHECK(sm_few.counters.interactions == sm.counters.interactions);
}

TEST_CASE("Par-Part-Loop at its default launch equals Par-Part-NoLoop") {
  const DeviceProfile profile = device_preset("a100");
  const GridSpec g = test::unit_grid({3, 3, 3});
  const Scene scene = make_scene(test::random_particles(300, g.dims, 4), g);
  const KernelSpec k = make_kernel(KernelKind::high_flop);
  const auto& a = ok(run_par_part_noloop(scene, k, profile));
  const auto& b = ok(run_par_part_loop(scene, k, profile));
  CHECK(a.outputs == b.outputs);
  CHECK(a.counters == b.counters);
}

TEST_CASE("frozen counters on the smallest scene") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({2, 2, 2});
  const Scene scene = make_scene(test::random_particles(8, g.dims, 1), g);
  const KernelSpec k = make_kernel(KernelKind::lennard_jones);
  const auto& pp = ok(run_par_part_noloop(scene, k, profile));
  CHECK(pp.counters.interactions == 56);
  CHECK(pp.counters.global_particle_loads == 64);
  CHECK(pp.counters.sync_count == 0);
  CHECK(pp.counters.idle_lane_iterations == 120 * 8);
  CHECK(pp.launch.blocks == 1);

  const auto& cell = ok(run_par_cell(scene, k, profile));
  CHECK(cell.counters.sync_count == 0);
  CHECK(cell.counters.shared_loads == 0);
  CHECK(cell.launch.blocks == 8);
}

TEST_CASE("Par-Cell-SM stages every neighbor cell in chunks") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({3, 3, 3});
  const Scene scene = make_scene(test::random_particles(270, g.dims, 12), g);
  const KernelSpec k = make_kernel(KernelKind::lennard_jones);
  StrategyOptions opts;
  opts.threads = 4;  // chunks of 4 staged records
  const auto& r = ok(run_par_cell_sm(scene, k, profile, opts));
  std::int64_t staged = 0, chunks = 0, target_chunks = 0;
  for (int c = 0; c < 27; ++c) {
    const std::int64_t tc = (scene.binning.count(c) + 3) / 4;
    target_chunks += tc;
    for (const CellCoord& nc : neighbor_cells(g.coord(c), g)) {
      const std::int64_t m = scene.binning.count(g.linear(nc));
      staged += tc * m;
      chunks += tc * ((m + 3) / 4);
    }
  }
  CHECK(r.counters.shared_stores == staged);
  CHECK(r.counters.sync_count == 2 * chunks);
  CHECK(r.counters.global_particle_loads == staged + 270);
  CHECK(r.counters.shared_loads == r.counters.interactions);
}

TEST_CASE("local offsets map each box cell onto its shared segment") {
  const GridSpec g = test::unit_grid({5, 4, 3});
  const Scene scene = make_scene(test::random_particles(600, g.dims, 21), g);
  for (const CellBox& box : {CellBox{{1, 1, 0}, {4, 3, 2}}, CellBox{{0, 0, 0}, {5, 4, 3}},
                             CellBox{{2, 3, 2}, {3, 4, 3}}}) {
    for (int threads : {1, 4, 64}) {
      const LocalOffsets lo = build_local_offsets(box, scene.binning, g, threads);
      std::int64_t total = 0;
      for (int z = box.lo[2]; z < box.hi[2]; ++z)
        for (int y = box.lo[1]; y < box.hi[1]; ++y)
          for (int x = box.lo[0]; x < box.hi[0]; ++x) {
            const int cell = g.linear(x, y, z);
            const auto k = static_cast<std::size_t>(lo.box_cell({x, y, z}));
            CHECK(lo.counts[k] == scene.binning.count(cell));
            CHECK(lo.global_offsets[k] == scene.binning.begin(cell));
            for (std::int64_t s = 0; s < lo.counts[k]; ++s) {
              CHECK(lo.shared_to_global[static_cast<std::size_t>(lo.local_offsets[k] + s)] ==
                    scene.binning.begin(cell) + s);
            }
            total += lo.counts[k];
          }
      CHECK(static_cast<std::int64_t>(lo.shared_to_global.size()) == total);
      CHECK(lo.local_offsets[0] == 0);
    }
  }
}

TEST_CASE("X-pencil loads are the sum of the staged pencils") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({7, 4, 3});
  const Scene scene = make_scene(test::random_particles(840, g.dims, 8), g);
  const KernelSpec k = make_kernel(KernelKind::lennard_jones);
  StrategyOptions opts;
  opts.pencil_interior = 3;
  const auto& r = ok(run_xpencil(scene, k, profile, opts));
  REQUIRE(r.launch.blocks == 3 * 4 * 3);
  for (std::int64_t b = 0; b < r.launch.blocks; ++b) {
    const int bx = static_cast<int>(b % 3), y = static_cast<int>((b / 3) % 4), z = static_cast<int>(b / 12);
    const int x0 = std::max(0, 3 * bx - 1), x1 = std::min(7, 3 * bx + 4);
    std::int64_t expect = 0, pencils = 0;
    for (int pz = std::max(0, z - 1); pz <= std::min(2, z + 1); ++pz)
      for (int py = std::max(0, y - 1); py <= std::min(3, y + 1); ++py) {
        for (int x = x0; x < x1; ++x) expect += scene.binning.count(g.linear(x, py, pz));
        ++pencils;
      }
    CHECK(r.block_counters[static_cast<std::size_t>(b)].global_particle_loads == expect);
    CHECK(r.block_counters[static_cast<std::size_t>(b)].sync_count == 2 * pencils);
  }
}

TEST_CASE("X-pencil on a single cell stages one pencil") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({1, 1, 1});
  const Scene scene = make_scene(test::random_particles(10, g.dims, 2), g);
  const auto& r = ok(run_xpencil(scene, make_kernel(KernelKind::lennard_jones), profile));
  CHECK(r.launch.blocks == 1);
  CHECK(r.counters.sync_count == 2);
  CHECK(r.counters.global_particle_loads == 10);
  CHECK(r.counters.interactions == 90);
}

TEST_CASE("X-pencil-reg with a one-pencil target box loads what X-pencil loads") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({6, 3, 3});
  const Scene scene = make_scene(test::random_particles(540, g.dims, 17), g);
  const KernelSpec k = make_kernel(KernelKind::lennard_jones);
  StrategyOptions opts;
  opts.pencil_interior = 6;
  opts.reg_target = Index3{6, 1, 1};
  const auto& xp = ok(run_xpencil(scene, k, profile, opts));
  const auto& reg = ok(run_xpencil_reg(scene, k, profile, opts));
  CHECK(reg.launch.blocks == xp.launch.blocks);
  CHECK(reg.counters.global_particle_loads == xp.counters.global_particle_loads);
  CHECK(reg.counters.interactions == xp.counters.interactions);
  CHECK(reg.counters.sync_count == xp.counters.sync_count);
}

TEST_CASE("X-pencil-reg never loads a target-box record twice") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({4, 4, 4});
  const Scene scene = make_scene(test::random_particles(640, g.dims, 23), g);
  StrategyOptions opts;
  opts.reg_target = Index3{2, 2, 2};
  const auto& r = ok(run_xpencil_reg(scene, make_kernel(KernelKind::lennard_jones), profile, opts));
  REQUIRE(r.launch.blocks == 8);
  for (std::int64_t b = 0; b < 8; ++b) {
    const Index3 lo{2 * static_cast<int>(b % 2), 2 * static_cast<int>((b / 2) % 2), 2 * static_cast<int>(b / 4)};
    std::int64_t reach = 0;
    for (int z = std::max(0, lo[2] - 1); z < std::min(4, lo[2] + 3); ++z)
      for (int y = std::max(0, lo[1] - 1); y < std::min(4, lo[1] + 3); ++y)
        for (int x = std::max(0, lo[0] - 1); x < std::min(4, lo[0] + 3); ++x) reach += scene.binning.count(g.linear(x, y, z));
    // Targets once plus every ghost record once.
    CHECK(r.block_counters[static_cast<std::size_t>(b)].global_particle_loads == reach);
  }
}

TEST_CASE("inapplicable launches are typed outcomes") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({3, 3, 3});
  // 600 particles crowded into one cell.
  auto parts = test::random_particles(600, {1, 1, 1}, 3);
  const Scene scene = make_scene(parts, g);
  REQUIRE(scene.binning.max_per_cell == 600);
  const KernelSpec k = make_kernel(KernelKind::lennard_jones);
  CHECK(std::holds_alternative<Unavailable>(run_all_in_sm(scene, k, profile)));
  CHECK(std::holds_alternative<Unavailable>(run_xpencil(scene, k, profile)));
  CHECK(std::holds_alternative<Unavailable>(run_xpencil_reg(scene, k, profile)));
  CHECK_FALSE(std::get<Unavailable>(run_all_in_sm(scene, k, profile)).reason.empty());
  CHECK(std::holds_alternative<StrategyResult>(run_par_cell_sm(scene, k, profile)));
}

TEST_CASE("a cutoff wider than a cell is a configuration error") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({2, 2, 2});
  const Scene scene = make_scene(test::random_particles(16, g.dims, 1), g);
  KernelSpec k = make_kernel(KernelKind::lennard_jones);
  k.cutoff = 1.5;
  for (Strategy s : all_strategies()) CHECK_THROWS_AS(run_strategy(s, scene, k, profile), ConfigError);
  StrategyOptions bad;
  bad.threads = 4096;
  k.cutoff = 1.0;
  CHECK_THROWS_AS(run_par_cell(scene, k, profile, bad), ConfigError);
}

TEST_CASE("empty scenes produce empty results") {
  const DeviceProfile profile = device_preset("t600");
  const GridSpec g = test::unit_grid({3, 3, 3});
  const Scene scene = make_scene(ParticleSet<float>(0), g);
  for (Strategy s : all_strategies()) {
    const auto& r = ok(run_strategy(s, scene, make_kernel(KernelKind::lennard_jones), profile));
    CHECK(r.outputs.size() == 0);
    CHECK(r.counters.interactions == 0);
  }
}

TEST_CASE("strategy names round trip") {
  CHECK(all_strategies().size() == 7);
  std::set<std::string_view> names;
  for (Strategy s : all_strategies()) {
    CHECK(parse_strategy(to_string(s)) == s);
    names.insert(to_string(s));
  }
  CHECK(names.size() == 7);
  CHECK_THROWS_AS(parse_strategy("par_block"), ConfigError);
}
