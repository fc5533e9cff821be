// Command-line front end: gen, run, compare, report.

#include "cellpair/compare.hpp"
#include "cellpair/experiment.hpp"
#include "cellpair/oracle.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace cellpair;

struct Options {
  std::vector<int> divisions{2, 4, 8};
  std::vector<int> avg{1, 10, 100};
  std::uint64_t seed = 1;
  std::vector<std::string> strategies{"all"};
  std::string kernel = "lj";
  std::string profile = "t600";
  int repeats = 1;
  std::string out;
  std::string format = "csv";
  std::string input;
};

std::vector<Strategy> parse_strategies(const std::vector<std::string>& names) {
  std::vector<Strategy> out;
  for (const auto& n : names) {
    if (n == "all") {
      const auto all = all_strategies();
      out.insert(out.end(), all.begin(), all.end());
    } else {
      out.push_back(parse_strategy(n));
    }
  }
  return out;
}

ExperimentConfig make_config(const Options& o) {
  ExperimentConfig c;
  c.divisions = o.divisions;
  c.avg_per_cell = o.avg;
  c.seed = o.seed;
  c.strategies = parse_strategies(o.strategies);
  c.kernel = parse_kernel_kind(o.kernel);
  c.profile = resolve_device_profile(o.profile);
  c.profile_name = c.profile.name;
  c.repeats = o.repeats;
  c.validate();
  return c;
}

// Writes to --out, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  fn(f);
  f.flush();
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string fmt_opt(const std::optional<double>& v, int precision = 3) {
  if (!v) return "-";
  std::ostringstream ss;
  ss << std::setprecision(precision) << *v;
  return ss.str();
}

void print_summary(const std::vector<ReportRow>& rows, std::ostream& os) {
  os << std::left << std::setw(18) << "scenario" << std::setw(17) << "strategy" << std::setw(11) << "error"
     << std::setw(10) << "int/part" << std::setw(12) << "load ratio" << std::setw(10) << "occupancy"
     << "status\n";
  for (const auto& r : rows) {
    std::string status = !r.applicable ? "n/a: " + r.reason : (row_failed(r) ? "FAIL" : "ok");
    os << std::left << std::setw(18) << r.scenario << std::setw(17) << r.strategy << std::setw(11)
       << fmt_opt(r.max_rel_error, 2) << std::setw(10) << fmt_opt(r.interactions_per_particle, 4)
       << std::setw(12) << fmt_opt(r.load_ratio) << std::setw(10) << fmt_opt(r.occupancy) << status << '\n';
  }
}

int count_failures(const std::vector<ReportRow>& rows) {
  int failures = 0;
  for (const auto& r : rows) failures += row_failed(r) ? 1 : 0;
  return failures;
}

int cmd_gen(const Options& o) {
  if (o.divisions.size() != 1 || o.avg.size() != 1) {
    throw ConfigError("gen takes exactly one --divisions and one --avg-per-cell value");
  }
  const Scenario s{o.divisions.front(), o.avg.front(), o.seed};
  const ParticleSet<float> p = generate_particles(s);
  const ReportFormat fmt = parse_report_format(o.format);
  with_output(o.out, [&](std::ostream& os) {
    os << std::setprecision(9);
    if (fmt == ReportFormat::csv) {
      os << "x,y,z,param\n";
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        os << p.pos_x[k] << ',' << p.pos_y[k] << ',' << p.pos_z[k] << ',' << p.param[k] << '\n';
      }
    } else {
      os << "{\"scenario\": \"" << s.id() << "\", \"divisions\": " << s.divisions
         << ", \"particles\": [";
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        os << (i ? ", " : "") << '[' << p.pos_x[k] << ", " << p.pos_y[k] << ", " << p.pos_z[k] << ", "
           << p.param[k] << ']';
      }
      os << "]}\n";
    }
  });
  return 0;
}

int cmd_run(const Options& o) {
  const ExperimentConfig config = make_config(o);
  const ReportFormat fmt = parse_report_format(o.format);
  const auto rows = run_experiment(config, [](const ReportRow& r) {
    std::cerr << r.scenario << ' ' << r.strategy << (r.applicable ? "" : " (n/a)") << '\n';
  });
  with_output(o.out, [&](std::ostream& os) { emit_report(rows, fmt, os); });
  if (!o.out.empty() && o.out != "-") print_summary(rows, std::cout);
  const int failures = count_failures(rows);
  if (failures) std::cerr << failures << " strategy run(s) exceeded the error tolerance\n";
  return failures ? 1 : 0;
}

// Always checks against the oracle, whatever the scene size.
int cmd_compare(const Options& o) {
  const ExperimentConfig config = make_config(o);
  const KernelSpec kernel = scenario_kernel(config.kernel);
  int failures = 0;
  std::cout << std::left << std::setw(18) << "scenario" << std::setw(17) << "strategy" << "max rel error\n";
  for (const Scenario& s : config.scenarios()) {
    const auto parts = generate_particles(s);
    const Scene scene = make_scene(parts, scenario_grid(s));
    const auto oracle = brute_force(parts, kernel);
    for (Strategy st : config.strategies) {
      std::cout << std::left << std::setw(18) << s.id() << std::setw(17) << to_string(st);
      StrategyOutcome out;
      try {
        out = run_strategy(st, scene, kernel, config.profile);
      } catch (const ConfigError& e) {
        out = Unavailable{e.what()};
      }
      if (const auto* u = std::get_if<Unavailable>(&out)) {
        std::cout << "n/a (" << u->reason << ")\n";
        continue;
      }
      const double err = max_relative_error(std::get<StrategyResult>(out).outputs, oracle);
      const bool ok = err <= kCorrectnessTolerance;
      failures += ok ? 0 : 1;
      std::cout << std::setprecision(3) << err << (ok ? "" : "  FAIL") << '\n';
    }
  }
  return failures ? 1 : 0;
}

int cmd_report(const Options& o) {
  if (o.input.empty()) throw ConfigError("report needs an input file");
  const auto rows = read_report(o.input);
  if (!o.out.empty()) {
    with_output(o.out, [&](std::ostream& os) { emit_report(rows, parse_report_format(o.format), os); });
  }
  print_summary(rows, std::cout);
  return count_failures(rows) ? 1 : 0;
}

void add_scenario_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--divisions", o.divisions, "Cells per axis, comma separated")->delimiter(',');
  cmd->add_option("--avg-per-cell", o.avg, "Average particles per cell, comma separated")->delimiter(',');
  cmd->add_option("--seed", o.seed, "Generator seed");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  add_scenario_flags(cmd, o);
  cmd->add_option("--strategies", o.strategies, "Strategy names or 'all', comma separated")->delimiter(',');
  cmd->add_option("--kernel", o.kernel, "Pair kernel")->check(CLI::IsMember({"lj", "low", "high"}));
  cmd->add_option("--profile", o.profile, "Device preset (t600, a100, mi210) or profile JSON file");
  cmd->add_option("--repeats", o.repeats, "Invocations per strategy; wall time is averaged");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cell-list particle interaction strategies on a simulated SIMT device"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate a scenario's particles");
  add_scenario_flags(gen, o);
  gen->add_option("--out", o.out, "Output file (default stdout)");
  gen->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* run = app.add_subcommand("run", "Run strategies and write a report");
  add_run_flags(run, o);
  run->add_option("--out", o.out, "Report file (default stdout)");
  run->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* compare = app.add_subcommand("compare", "Check strategies against the brute-force oracle");
  add_run_flags(compare, o);

  auto* report = app.add_subcommand("report", "Summarize or convert an existing report");
  report->add_option("input", o.input, "Report file (csv or json)")->required();
  report->add_option("--out", o.out, "Write the rows again to this file");
  report->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (run->parsed()) return cmd_run(o);
    if (compare->parsed()) return cmd_compare(o);
    if (report->parsed()) return cmd_report(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
