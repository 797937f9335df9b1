#pragma once

// Command implementations behind the dcrp executable. Each command writes to
// caller-supplied streams and throws dcrp::Error on failure; run_guarded maps
// errors onto process exit codes.

#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dcrp/construct.hpp"
#include "dcrp/csv.hpp"
#include "dcrp/error.hpp"
#include "dcrp/fvsim.hpp"

namespace dcrp::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNumericalFailure = 2, kInvariantFailure = 3 };

inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::VacuumGenerated:
    case ErrorKind::NoConvergence:
    case ErrorKind::NoBracket:
    case ErrorKind::PositivityLoss:
    case ErrorKind::AmbiguousClassification:
      return kNumericalFailure;
    case ErrorKind::StructureMismatch:
    case ErrorKind::InvariantViolation:
      return kInvariantFailure;
    default:
      return kInputError;
  }
}

/// Run a command, report any failure on err and return the exit code.
template <typename F>
int run_guarded(F&& command, std::ostream& err) {
  try {
    return command();
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct ProblemSpec {
  double rho = 1.0;
  double u = 0.8;
  double p = 1.0;
  double gamma = 1.4;
  double k = 0.2;

  PrimitiveState state() const {
    const PrimitiveState s{rho, u, p};
    require_valid(s, "initial state");
    if (!(u > 0.0)) throw Error(ErrorKind::BackflowUnsupported, "ambient velocity must be positive");
    return s;
  }
  HeatingContext context() const { return HeatingContext(gamma, k); }
};

struct Table1Entry {
  const char* name;
  ProblemSpec spec;
  double t_end;
  SolutionType expected;
};

inline const std::array<Table1Entry, 5>& table1() {
  static const std::array<Table1Entry, 5> tests{{
      {"Test1", {1.0, 0.8, 1.0, 1.4, 0.2}, 4.5, SolutionType::Type1},
      {"Test2", {1.0, 1.2, 1.0, 1.4, 0.2}, 4.5, SolutionType::Type1},
      {"Test3", {1.0, 1.8, 1.0, 1.4, 0.2}, 4.5, SolutionType::Type2},
      {"Test4", {1.0, 2.8, 1.0, 1.4, 0.2}, 2.5, SolutionType::Type3},
      {"Test5", {1.0, 2.8, 1.0, 1.4, 2.0}, 2.5, SolutionType::Type2},
  }};
  return tests;
}

namespace detail {

inline std::string human(double v) {
  if (std::isinf(v)) return "unbounded";
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

inline void row(std::ostream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

inline std::string num(double v) { return csv::format(v); }

}  // namespace detail

// ---------------------------------------------------------------------------
// classify

struct ClassifyReport {
  double m1;
  double m_star;
  std::optional<double> m_star_star;
  std::optional<double> y_value;   // absent when M1 < M*
  std::optional<double> y_root;    // absent when no sign change was found
  SolutionType type;
};

inline ClassifyReport classify_report(const ProblemSpec& spec) {
  const auto u1 = spec.state();
  const auto ctx = spec.context();
  ClassifyReport r{mach(u1, ctx.gamma), m_star(ctx), m_star_star(ctx), std::nullopt, std::nullopt,
                   classify(u1, ctx)};
  if (r.m1 >= r.m_star) r.y_value = big_y(r.m1, ctx);
  try {
    r.y_root = y_root(ctx);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoBracket) throw;
  }
  return r;
}

inline int cmd_classify(const ProblemSpec& spec, std::ostream& out) {
  const auto r = classify_report(spec);
  const auto opt = [](const std::optional<double>& v, const char* missing) {
    return v ? detail::human(*v) : std::string(missing);
  };
  out << "M1     = " << detail::human(r.m1) << "\n"
      << "M*     = " << detail::human(r.m_star) << "\n"
      << "M**    = " << opt(r.m_star_star, "unbounded") << "\n"
      << "Y(M1)  = " << opt(r.y_value, "n/a (M1 < M*)") << "\n"
      << "y_root = " << opt(r.y_root, "none") << "\n"
      << "type   = " << to_string(r.type) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// solve
//
// Output is three CSV blocks separated by blank lines: problem metadata, the
// region states, and the wave speeds. Absent waves are written as "nan".

inline void write_fan(std::ostream& out, const WaveFan& fan) {
  using detail::num;
  const GasGamma g = fan.gamma();
  out << "type,gamma,k\n";
  detail::row(out, {std::string(to_string(fan.kind)), num(g.value()), num(fan.ctx.k)});
  out << "\nregion,rho,u,p,M\n";
  const auto region = [&](const char* name, const PrimitiveState& s) {
    detail::row(out, {name, num(s.rho), num(s.u), num(s.p), num(mach(s, g))});
  };
  region("1", fan.u1);
  region("4", fan.pre_heating());
  region("5", fan.u5);
  region("6", fan.u6);
  region("7", fan.u7);
  region("8", fan.u1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out << "\nwave,speed\n";
  detail::row(out, {"left_shock", num(fan.s_left.value_or(nan))});
  detail::row(out, {"heating", num(0.0)});
  detail::row(out, {"raref_head", num(fan.raref_head.value_or(nan))});
  detail::row(out, {"raref_tail", num(fan.raref_tail.value_or(nan))});
  detail::row(out, {"contact", num(fan.contact_speed)});
  detail::row(out, {"right_shock", num(fan.s_right)});
}

/// Inverse of write_fan.
inline WaveFan read_fan(std::istream& in) {
  std::string line;
  std::vector<std::vector<std::string>> blocks_rows[3];
  int block = 0;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      ++block;
      header = true;
      if (block > 2) break;
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    for (auto c : csv::split(line)) cells.emplace_back(c);
    blocks_rows[block].push_back(std::move(cells));
  }
  const auto bad = [] { return Error(ErrorKind::InvalidParameter, "malformed solve output"); };
  const auto number = [&](const std::string& s) {
    const auto v = csv::parse_double(s);
    if (!v) throw bad();
    return *v;
  };
  if (blocks_rows[0].size() != 1 || blocks_rows[1].size() != 6 || blocks_rows[2].size() != 6) throw bad();
  const auto& meta = blocks_rows[0][0];
  if (meta.size() != 3) throw bad();
  const auto kind = parse_solution_type(meta[0]);
  if (!kind) throw bad();
  const HeatingContext ctx(number(meta[1]), number(meta[2]));

  std::array<PrimitiveState, 6> s{};
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& r = blocks_rows[1][i];
    if (r.size() != 5) throw bad();
    s[i] = {number(r[1]), number(r[2]), number(r[3])};
  }
  std::array<double, 6> w{};
  for (std::size_t i = 0; i < 6; ++i) {
    if (blocks_rows[2][i].size() != 2) throw bad();
    w[i] = number(blocks_rows[2][i][1]);
  }
  const auto opt = [](double v) { return std::isnan(v) ? std::nullopt : std::optional<double>(v); };
  WaveFan fan{*kind, ctx, s[0], std::nullopt, s[2], s[3], s[4], opt(w[0]), opt(w[2]), opt(w[3]), w[4], w[5]};
  if (*kind != SolutionType::Type3) fan.u4 = s[1];
  return fan;
}

inline int cmd_solve(const ProblemSpec& spec, std::ostream& out) {
  write_fan(out, solve(spec.state(), spec.context()));
  return kOk;
}

// ---------------------------------------------------------------------------
// sample

struct SampleOptions {
  double t = 1.0;
  int n_points = 1001;
  std::optional<double> x_min;
  std::optional<double> x_max;
};

inline int cmd_sample(const ProblemSpec& spec, const SampleOptions& opt, std::ostream& out) {
  if (!(opt.t > 0.0)) throw Error(ErrorKind::InvalidParameter, "sample time must be positive");
  if (opt.n_points < 2) throw Error(ErrorKind::InvalidParameter, "need at least two sample points");
  const auto fan = solve(spec.state(), spec.context());
  const double reach = 1.25 * max_wave_speed(fan) * opt.t;
  const double a = opt.x_min.value_or(-reach);
  const double b = opt.x_max.value_or(reach);
  if (!(b > a)) throw Error(ErrorKind::InvalidParameter, "x range is empty");
  out << "x,rho,u,p\n";
  for (int i = 0; i < opt.n_points; ++i) {
    const double x = a + (b - a) * i / (opt.n_points - 1);
    const auto s = sample(fan, x, opt.t);
    csv::write_row(out, {x, s.rho, s.u, s.p});
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  double t_end = 1.0;
  int n_cells = 2001;
  int order = 1;
  double cfl = 0.45;
  std::optional<double> half_width;  // default: just wide enough for the fan
  int exclusion_radius = 5;
};

struct SimulateResult {
  SimSnapshot snapshot;
  ComparisonReport report;
};

inline SimulateResult simulate(const ProblemSpec& spec, const SimulateOptions& opt) {
  const auto u1 = spec.state();
  const auto ctx = spec.context();
  if (!(opt.t_end > 0.0)) throw Error(ErrorKind::InvalidParameter, "t_end must be positive");
  const auto fan = solve(u1, ctx);
  SimConfig cfg;
  cfg.n_cells = opt.n_cells;
  cfg.half_width = opt.half_width.value_or(required_half_width(fan, opt.t_end, 1.15));
  cfg.cfl = opt.cfl;
  cfg.t_end = opt.t_end;
  cfg.order = opt.order;
  cfg.ctx = ctx;
  cfg.u1 = u1;
  auto snap = run(cfg);
  auto rep = compare_to_exact(snap, fan, opt.exclusion_radius);
  return {std::move(snap), std::move(rep)};
}

inline int cmd_simulate(const ProblemSpec& spec, const SimulateOptions& opt, std::ostream& snapshot_out,
                        std::ostream& report_out) {
  const auto r = simulate(spec, opt);
  write_snapshot_csv(snapshot_out, r.snapshot);
  write_report(report_out, r.report);
  return kOk;
}

// ---------------------------------------------------------------------------
// scan

struct ScanOptions {
  double gamma_min = 1.05;
  double gamma_max = 2.9;
  int n_gamma = 40;
  std::optional<double> k_max;  // default per row: min(0.99/(gamma^2-1), 2)
  int n_k = 40;
};

struct ScanRow {
  double gamma;
  double k;
  double m_star = std::numeric_limits<double>::quiet_NaN();
  double m_star_star = std::numeric_limits<double>::quiet_NaN();
  double y_root = std::numeric_limits<double>::quiet_NaN();
  double t_value = std::numeric_limits<double>::quiet_NaN();
  std::optional<ErrorKind> error;
};

inline ScanRow scan_point(double gamma, double k) {
  ScanRow row;
  row.gamma = gamma;
  row.k = k;
  try {
    const HeatingContext ctx(gamma, k);
    row.m_star = m_star(ctx);
    const auto mss = m_star_star(ctx);
    row.m_star_star = mss.value_or(std::numeric_limits<double>::infinity());
    row.y_root = y_root(ctx);
    row.t_value = mss ? *mss - row.y_root : std::numeric_limits<double>::infinity();
  } catch (const Error& e) {
    row.error = e.kind();
  }
  return row;
}

inline std::vector<ScanRow> scan(const ScanOptions& opt) {
  if (opt.n_gamma < 1 || opt.n_k < 1) throw Error(ErrorKind::InvalidParameter, "scan grid must be non-empty");
  if (!(opt.gamma_min > 1.0) || !(opt.gamma_max < 3.0) || opt.gamma_min > opt.gamma_max) {
    throw Error(ErrorKind::InvalidGamma, "gamma range must lie inside (1, 3)");
  }
  if (opt.k_max && !(*opt.k_max > 0.0)) throw Error(ErrorKind::InvalidParameter, "k range must be positive");
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(opt.n_gamma) * opt.n_k);
  for (int i = 0; i < opt.n_gamma; ++i) {
    const double gamma =
        opt.n_gamma == 1 ? opt.gamma_min
                         : opt.gamma_min + (opt.gamma_max - opt.gamma_min) * i / (opt.n_gamma - 1);
    const double k_top = opt.k_max.value_or(std::min(0.99 / (gamma * gamma - 1.0), 2.0));
    for (int j = 1; j <= opt.n_k; ++j) rows.push_back(scan_point(gamma, k_top * j / opt.n_k));
  }
  return rows;
}

inline int cmd_scan(const ScanOptions& opt, std::ostream& out) {
  using detail::num;
  out << "gamma,k,m_star,m_star_star,y_root,T\n";
  for (const auto& r : scan(opt)) {
    if (r.error) {
      const std::string marker = "error:" + std::string(to_string(*r.error));
      detail::row(out, {num(r.gamma), num(r.k), marker, marker, marker, marker});
    } else {
      detail::row(out, {num(r.gamma), num(r.k), num(r.m_star), num(r.m_star_star), num(r.y_root), num(r.t_value)});
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// kmax

struct KmaxOptions {
  double gamma = 1.4;
  double m_min = 0.5;
  double m_max = 100.0;
  int n = 200;
};

inline int cmd_kmax(const KmaxOptions& opt, std::ostream& out) {
  const GasGamma g(opt.gamma);
  if (!(opt.m_min > 0.0) || !(opt.m_max > opt.m_min) || opt.n < 2) {
    throw Error(ErrorKind::InvalidParameter, "need 0 < m_min < m_max and n >= 2");
  }
  out << "M,k_max\n";
  for (int i = 0; i < opt.n; ++i) {
    const double m = i == opt.n - 1 ? opt.m_max : opt.m_min + (opt.m_max - opt.m_min) * i / (opt.n - 1);
    csv::write_row(out, {m, k_max(m, g)});
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// table1

/// Classify the five reference problems. `expected` overrides the reference
/// answers (used to check that a mismatch is reported).
inline int cmd_table1(std::ostream& out, const std::optional<std::vector<SolutionType>>& expected = std::nullopt) {
  const auto& tests = table1();
  if (expected && expected->size() != tests.size()) {
    throw Error(ErrorKind::InvalidParameter, "expected list must have five entries");
  }
  bool all_ok = true;
  out << "test   u     k     expected  computed\n";
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const auto& t = tests[i];
    const auto want = expected ? (*expected)[i] : t.expected;
    const auto got = classify(t.spec.state(), t.spec.context());
    const bool ok = want == got;
    all_ok = all_ok && ok;
    out << t.name << "  " << std::setw(4) << t.spec.u << "  " << std::setw(4) << t.spec.k << "  "
        << to_string(want) << "     " << to_string(got) << (ok ? "" : "  MISMATCH") << "\n";
  }
  return all_ok ? kOk : kInvariantFailure;
}

inline std::vector<SolutionType> parse_type_list(std::string_view s) {
  std::vector<SolutionType> out;
  for (auto cell : csv::split(s)) {
    const auto t = parse_solution_type(cell);
    if (!t) throw Error(ErrorKind::InvalidParameter, "unknown solution type '" + std::string(cell) + "'");
    out.push_back(*t);
  }
  return out;
}

}  // namespace dcrp::cli
