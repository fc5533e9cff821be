#include "cellpair/launchcfg.hpp"

#include <doctest.h>

using namespace cellpair;

TEST_CASE("sub-box for 96 cells is 6 x 4 x 4") {
  CHECK(max_cells_in_shared(49152, 16, 32) == 96);
  const auto box = subbox_dims(49152, 16, 32);
  REQUIRE(box);
  CHECK(*box == Index3{6, 4, 4});
}

TEST_CASE("sub-box candidates around the cube root") {
  CHECK(subbox_dims_for_cells(27) == Index3{3, 3, 3});
  CHECK_FALSE(subbox_dims_for_cells(26));
  CHECK_FALSE(subbox_dims_for_cells(0));
  CHECK(subbox_dims_for_cells(36) == Index3{4, 3, 3});
  CHECK(subbox_dims_for_cells(45) == Index3{5, 3, 3});
  CHECK(subbox_dims_for_cells(48) == Index3{4, 4, 3});
  CHECK(subbox_dims_for_cells(64) == Index3{4, 4, 4});
  CHECK(subbox_dims_for_cells(124) == Index3{5, 5, 4});
  CHECK(subbox_dims_for_cells(125) == Index3{5, 5, 5});
}

TEST_CASE("ensure_parallelism collapses the largest dims, Z first on ties") {
  const Index3 grid{4, 6, 4};
  CHECK(block_count({2, 2, 2}, grid) == 12);
  const Index3 got = ensure_parallelism({2, 2, 2}, grid, 40);
  CHECK(got == Index3{2, 1, 1});
  CHECK(block_count(got, grid) == 48);
  // Already parallel enough: untouched.
  CHECK(ensure_parallelism({2, 2, 2}, {16, 16, 16}, 40) == Index3{2, 2, 2});
  // Cannot reach the target: everything collapses to 1.
  CHECK(ensure_parallelism({2, 2, 2}, {2, 2, 2}, 40) == Index3{1, 1, 1});
  CHECK(ensure_parallelism({4, 2, 2}, {8, 8, 8}, 40) == Index3{1, 2, 2});
}

TEST_CASE("pencil length is bounded by memory, the grid and the thread cap") {
  const auto a = pencil_len(49152, 16, 32, 100);
  REQUIRE(a);
  CHECK(a->total_len == 64);
  CHECK(a->interior_len == 62);
  CHECK(a->threads == 1024);

  const auto b = pencil_len(49152, 16, 32, 4);
  REQUIRE(b);
  CHECK(b->total_len == 6);

  const auto c = pencil_len(49152, 4, 32, 1000);
  REQUIRE(c);
  CHECK(c->total_len == 256);

  CHECK_FALSE(pencil_len(49152, 1025, 32, 8));
  CHECK_FALSE(pencil_len(49152, 700, 32, 8));
}

TEST_CASE("frozen All-in-SM configuration on the T600 preset") {
  const auto cfg = configure_all_in_sm(device_preset("t600"), 16, {8, 8, 8});
  REQUIRE(cfg);
  CHECK(cfg->interior_dims == Index3{1, 2, 2});
  CHECK(cfg->box_dims == Index3{3, 4, 4});
  CHECK(cfg->threads == 512);
  CHECK(cfg->blocks == 128);
  CHECK(cfg->bytes_per_cell == 512);
  CHECK_FALSE(configure_all_in_sm(device_preset("t600"), 100, {8, 8, 8}));
}

TEST_CASE("All-in-SM interior is clamped to small grids") {
  const auto cfg = configure_all_in_sm(device_preset("t600"), 1, {2, 2, 2});
  REQUIRE(cfg);
  CHECK(cfg->interior_dims == Index3{1, 1, 1});
  CHECK(cfg->blocks == 8);
}

TEST_CASE("frozen X-pencil configurations") {
  const DeviceProfile t600 = device_preset("t600");
  const auto cfg = configure_xpencil(t600, 16, {8, 8, 8});
  REQUIRE(cfg);
  CHECK(cfg->interior_len == 8);
  CHECK(cfg->total_len == 10);
  CHECK(cfg->threads == 160);
  CHECK(cfg->blocks == 64);

  const auto pinned = configure_xpencil(t600, 16, {8, 8, 8}, 3);
  REQUIRE(pinned);
  CHECK(pinned->blocks == 3 * 64);
  CHECK_FALSE(configure_xpencil(t600, 16, {200, 8, 8}, 80));
  CHECK_FALSE(configure_xpencil(t600, 600, {8, 8, 8}));
}

TEST_CASE("frozen X-pencil-reg configurations") {
  const DeviceProfile t600 = device_preset("t600");
  const auto cfg = configure_xpencil_reg(t600, 16, {8, 8, 8});
  REQUIRE(cfg);
  CHECK(cfg->target_dims == Index3{1, 2, 2});
  CHECK(cfg->pencil_total_len == 3);
  CHECK(cfg->threads == 64);
  CHECK(cfg->blocks == 128);

  const auto pinned = configure_xpencil_reg(t600, 4, {8, 8, 8}, Index3{8, 2, 2});
  REQUIRE(pinned);
  CHECK(pinned->threads == 128);
  CHECK(pinned->blocks == 16);
  CHECK_FALSE(configure_xpencil_reg(t600, 16, {8, 8, 8}, Index3{8, 4, 4}));
}
