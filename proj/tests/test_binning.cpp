#include "cellpair/binning.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cellpair;

TEST_CASE("global_prefix is the exclusive scan with a trailing total") {
  const std::vector<std::int64_t> counts{3, 0, 2, 5};
  CHECK(global_prefix(counts) == std::vector<std::int64_t>{0, 3, 3, 5, 10});
  CHECK(global_prefix(std::vector<std::int64_t>{}) == std::vector<std::int64_t>{0});
}

TEST_CASE("bin_particles against direct counting") {
  const GridSpec g = test::unit_grid({4, 3, 5});
  const auto p = test::random_particles(500, g.dims, 11);
  const CellBinning b = bin_particles(p, g);

  REQUIRE(b.offsets.size() == g.cell_count() + 1);
  CHECK(b.offsets.back() == 500);
  std::int64_t max_count = 0;
  for (int c = 0; c < static_cast<int>(g.cell_count()); ++c) {
    std::int64_t direct = 0;
    for (std::size_t i = 0; i < p.size(); ++i) direct += g.linear(cell_index(p.position(i), g)) == c;
    CHECK(b.count(c) == direct);
    max_count = std::max(max_count, direct);
    // Stable: original indices ascend inside each cell, and every member belongs to it.
    for (std::int64_t s = b.begin(c); s < b.end(c); ++s) {
      const auto i = static_cast<std::size_t>(b.perm[static_cast<std::size_t>(s)]);
      CHECK(g.linear(cell_index(p.position(i), g)) == c);
      if (s > b.begin(c)) CHECK(b.perm[static_cast<std::size_t>(s - 1)] < b.perm[static_cast<std::size_t>(s)]);
    }
  }
  CHECK(b.max_per_cell == max_count);

  auto sorted_perm = b.perm;
  std::sort(sorted_perm.begin(), sorted_perm.end());
  for (std::size_t i = 0; i < sorted_perm.size(); ++i) CHECK(sorted_perm[i] == static_cast<std::int64_t>(i));
}

TEST_CASE("gather then scatter restores the original order") {
  const GridSpec g = test::unit_grid({3, 3, 3});
  auto p = test::random_particles(200, g.dims, 5);
  for (Eigen::Index i = 0; i < p.param.size(); ++i) p.param[i] = static_cast<float>(i);
  const CellBinning b = bin_particles(p, g);
  const auto sorted = gather(p, b.perm);
  CHECK(sorted.param[0] == static_cast<float>(b.perm[0]));
  CHECK(scatter(sorted, b.perm) == p);
}

TEST_CASE("frozen binning of a small fixed set") {
  GridSpec g = test::unit_grid({2, 2, 1});
  ParticleSet<float> p(5);
  p.set_position(0, {1.5f, 0.5f, 0.5f});
  p.set_position(1, {0.5f, 0.5f, 0.5f});
  p.set_position(2, {1.5f, 1.5f, 0.5f});
  p.set_position(3, {1.2f, 0.1f, 0.9f});
  p.set_position(4, {0.1f, 1.9f, 0.0f});
  const CellBinning b = bin_particles(p, g);
  CHECK(b.counts == std::vector<std::int64_t>{1, 2, 1, 1});
  CHECK(b.offsets == std::vector<std::int64_t>{0, 1, 3, 4, 5});
  CHECK(b.perm == std::vector<std::int64_t>{1, 0, 3, 4, 2});
  CHECK(b.max_per_cell == 2);
}

TEST_CASE("empty particle set bins to zero counts") {
  const GridSpec g = test::unit_grid({2, 2, 2});
  const CellBinning b = bin_particles(ParticleSet<float>(0), g);
  CHECK(b.offsets.back() == 0);
  CHECK(b.max_per_cell == 0);
  CHECK(b.perm.empty());
}
