#include "cellpair/report.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <sstream>

using namespace cellpair;

namespace {

ReportRow sample_row() {
  ReportRow r;
  r.scenario = "d4-a10-s1";
  r.divisions = 4;
  r.avg_per_cell = 10;
  r.seed = std::numeric_limits<std::uint64_t>::max();
  r.n_particles = 640;
  r.kernel = "lj";
  r.profile = "t600";
  r.strategy = "xpencil";
  r.applicable = true;
  r.comparison_basis = "oracle";
  r.max_rel_error = 1.0 / 3.0 * 1e-5;
  r.interactions_per_particle = 154.296875;
  r.global_particle_loads = 123456789012345;
  r.global_particle_stores = 640;
  r.shared_loads = 0;
  r.shared_stores = 7;
  r.sync_count = 18;
  r.interactions = 98750;
  r.idle_lane_iterations = 3;
  r.global_transactions = 44;
  r.blocks = 16;
  r.threads_per_block = 160;
  r.dynamic_shared_bytes = 5120;
  r.blocks_per_sm = 6;
  r.occupancy = 0.9375;
  r.load_ratio = 0.1 + 0.2;
  r.wall_time_s = 0.0123456789;
  return r;
}

ReportRow unavailable_row() {
  ReportRow r;
  r.scenario = "d8-a100-s2";
  r.strategy = "all_in_sm";
  r.reason = "sub-box too small, \"M_C\" = 129\nsecond line";
  return r;
}

}  // namespace

TEST_CASE("empty reports are header-only CSV") {
  std::ostringstream os;
  emit_csv({}, os);
  const std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(text.rfind("scenario,divisions,", 0) == 0);
  CHECK(parse_csv(text).empty());
}

TEST_CASE("CSV header has one column per row field, in order") {
  const auto cols = report_columns();
  CHECK(cols.size() == 28);
  CHECK(cols.front() == "scenario");
  CHECK(cols[8] == "applicable");
  CHECK(cols.back() == "wall_time_s");
  std::ostringstream os;
  emit_csv({sample_row()}, os);
  const std::string header = os.str().substr(0, os.str().find('\n'));
  CHECK(static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1 == cols.size());
}

TEST_CASE("CSV and JSON round trips are exact") {
  ReportRow worst = sample_row();
  worst.max_rel_error = std::numeric_limits<double>::infinity();
  const std::vector<ReportRow> rows{sample_row(), unavailable_row(), worst};
  std::ostringstream csv, json;
  emit_report(rows, ReportFormat::csv, csv);
  emit_report(rows, ReportFormat::json, json);
  CHECK(parse_csv(csv.str()) == rows);
  CHECK(parse_json(json.str()) == rows);
  CHECK(parse_report(csv.str()) == rows);
  CHECK(parse_report(json.str()) == rows);
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS(parse_csv(""));
  CHECK_THROWS(parse_csv("a,b\n1,2\n"));
  std::ostringstream os;
  emit_csv({sample_row()}, os);
  std::string text = os.str();
  CHECK_THROWS(parse_csv(text + "x,y\n"));
  CHECK_THROWS(parse_json("{}"));
  CHECK_THROWS(parse_json("[{\"scenario\": \"x\"}]"));
  CHECK_THROWS_AS(parse_report_format("xml"), std::runtime_error);
}
