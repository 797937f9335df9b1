// dcrp: exact solutions of the Euler equations with a point heat source.
//
//   dcrp classify --u 1.8 --k 0.2
//   dcrp solve    --u 2.8 --k 2.0
//   dcrp sample   --u 0.8 --t 4.5 --n-points 2001
//   dcrp simulate --u 0.8 --t 4.5 --n-cells 2001 --order 2 --out snap.csv
//   dcrp scan | kmax | table1
//
// Problem options may also come from --config FILE (key=value lines); flags
// given on the command line take precedence.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dcrp/cli.hpp"

namespace {

using namespace dcrp;

void add_problem_options(CLI::App& app, cli::ProblemSpec& spec) {
  app.add_option("--rho", spec.rho, "ambient density")->capture_default_str();
  app.add_option("--u", spec.u, "ambient velocity (must be positive)")->capture_default_str();
  app.add_option("--p", spec.p, "ambient pressure")->capture_default_str();
  app.add_option("--gamma", spec.gamma, "ratio of specific heats, 1 < gamma < 3")->capture_default_str();
  app.add_option("--k", spec.k, "heating parameter k > 0")->capture_default_str();
}

std::ostream* open_or(std::optional<std::string> const& path, std::ofstream& file, std::ostream& fallback) {
  if (!path) return &fallback;
  file.open(*path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidParameter, "cannot open " + *path + " for writing");
  return &file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical solutions of the Euler equations with a point heat source"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file with default option values");

  cli::ProblemSpec spec;
  add_problem_options(app, spec);

  int code = cli::kOk;
  const auto guarded = [&](auto&& fn) { code = cli::run_guarded(fn, std::cerr); };

  auto* classify = app.add_subcommand("classify", "report M1, M*, M**, Y(M1), y_root and the solution type");
  classify->callback([&] { guarded([&] { return cli::cmd_classify(spec, std::cout); }); });

  auto* solve = app.add_subcommand("solve", "intermediate states and wave speeds as CSV");
  solve->callback([&] { guarded([&] { return cli::cmd_solve(spec, std::cout); }); });

  cli::SampleOptions sample_opt;
  auto* sample = app.add_subcommand("sample", "exact solution on a uniform x grid as CSV");
  sample->add_option("--t", sample_opt.t, "time")->capture_default_str();
  sample->add_option("--n-points", sample_opt.n_points, "number of samples")->capture_default_str();
  sample->add_option("--x-min", sample_opt.x_min, "left end (default: beyond the fastest wave)");
  sample->add_option("--x-max", sample_opt.x_max, "right end");
  sample->callback([&] { guarded([&] { return cli::cmd_sample(spec, sample_opt, std::cout); }); });

  cli::SimulateOptions sim_opt;
  std::optional<std::string> sim_out;
  std::optional<std::string> sim_report;
  auto* simulate = app.add_subcommand("simulate", "Godunov run compared against the exact fan");
  simulate->add_option("--t", sim_opt.t_end, "final time")->capture_default_str();
  simulate->add_option("--n-cells", sim_opt.n_cells, "number of cells (odd)")->capture_default_str();
  simulate->add_option("--order", sim_opt.order, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
  simulate->add_option("--cfl", sim_opt.cfl, "Courant number")->capture_default_str();
  simulate->add_option("--half-width", sim_opt.half_width, "domain is [-L, L] (default: fits the fan)");
  simulate->add_option("--exclusion", sim_opt.exclusion_radius, "cells skipped around waves")->capture_default_str();
  simulate->add_option("--out", sim_out, "snapshot CSV path (default stdout)");
  simulate->add_option("--report", sim_report, "comparison report CSV path (default stderr)");
  simulate->callback([&] {
    guarded([&] {
      std::ofstream snap_file, report_file;
      auto* snap_os = open_or(sim_out, snap_file, std::cout);
      auto* report_os = open_or(sim_report, report_file, std::cerr);
      return cli::cmd_simulate(spec, sim_opt, *snap_os, *report_os);
    });
  });

  cli::ScanOptions scan_opt;
  auto* scan = app.add_subcommand("scan", "M*, M**, y_root and T = M** - y_root over a (gamma, k) grid");
  scan->add_option("--gamma-min", scan_opt.gamma_min)->capture_default_str();
  scan->add_option("--gamma-max", scan_opt.gamma_max)->capture_default_str();
  scan->add_option("--n-gamma", scan_opt.n_gamma)->capture_default_str();
  scan->add_option("--k-max", scan_opt.k_max, "largest k (default min(0.99/(gamma^2-1), 2))");
  scan->add_option("--n-k", scan_opt.n_k)->capture_default_str();
  scan->callback([&] { guarded([&] { return cli::cmd_scan(scan_opt, std::cout); }); });

  cli::KmaxOptions kmax_opt;
  auto* kmax = app.add_subcommand("kmax", "maximum heating parameter versus upstream Mach number");
  kmax->add_option("--m-min", kmax_opt.m_min)->capture_default_str();
  kmax->add_option("--m-max", kmax_opt.m_max)->capture_default_str();
  kmax->add_option("--n", kmax_opt.n)->capture_default_str();
  kmax->callback([&] {
    kmax_opt.gamma = spec.gamma;
    guarded([&] { return cli::cmd_kmax(kmax_opt, std::cout); });
  });

  std::optional<std::string> expected;
  auto* table = app.add_subcommand("table1", "classify the five reference problems");
  table->add_option("--expected", expected, "override expected types, e.g. Type1,Type1,Type2,Type3,Type2");
  table->callback([&] {
    guarded([&] {
      std::optional<std::vector<SolutionType>> want;
      if (expected) want = cli::parse_type_list(*expected);
      return cli::cmd_table1(std::cout, want);
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInputError;
  }
  return code;
}
