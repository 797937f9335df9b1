// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is nonzero when any criterion fails. Criteria listed with
// --xfail are known failures: their FAIL line is still printed, but only an
// unexpected outcome (a failure not listed, or a listed one that passes)
// changes the exit status.
//
//   acceptance [--order 1|2] [--only N] [--xfail N[,N...]]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dcrp/cli.hpp"

using namespace dcrp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0: no limit stated
  std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

PrimitiveState at_mach(double m, double gamma) { return {1.0, m * std::sqrt(gamma), 1.0}; }

double state_diff(const PrimitiveState& a, const PrimitiveState& b) {
  const auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
  return std::max({rel(a.rho, b.rho), rel(a.u, b.u), rel(a.p, b.p)});
}

double fan_diff(const WaveFan& a, const WaveFan& b) {
  const double a1 = sound_speed(a.u1, a.gamma());
  double d = std::max({state_diff(a.u5, b.u5), state_diff(a.u6, b.u6), state_diff(a.u7, b.u7)});
  // region 4 only exists while the left shock moves upstream
  const double s_left = std::min(a.s_left.value_or(0.0), b.s_left.value_or(0.0));
  if (s_left < -1e-9 * a1) d = std::max(d, state_diff(a.pre_heating(), b.pre_heating()));
  d = std::max(d, std::abs(a.contact_speed - b.contact_speed) / a1);
  d = std::max(d, std::abs(a.s_right - b.s_right) / a1);
  d = std::max(d, std::abs(a.s_left.value_or(0.0) - b.s_left.value_or(0.0)) / a1);
  return d;
}

// Grid runs shared by criteria 10 and 11.
struct RefinementRun {
  int n;
  cli::SimulateResult result;
  double seconds;
};

std::vector<std::vector<RefinementRun>> g_runs;
int g_order = 2;

const std::vector<std::vector<RefinementRun>>& refinement_runs() {
  if (!g_runs.empty()) return g_runs;
  for (const auto& t : cli::table1()) {
    std::vector<RefinementRun> per_test;
    for (int n : {251, 501, 1001, 2001}) {
      cli::SimulateOptions opt;
      opt.t_end = t.t_end;
      opt.n_cells = n;
      opt.order = g_order;
      const auto t0 = std::chrono::steady_clock::now();
      auto r = cli::simulate(t.spec, opt);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      per_test.push_back({n, std::move(r), s});
    }
    g_runs.push_back(std::move(per_test));
  }
  return g_runs;
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> list;

  list.push_back({1, "critical Mach numbers (gamma=1.4, k=0.2) within 5e-5", 0.0, [] {
                    const HeatingContext ctx(1.4, 0.2);
                    const double ms = m_star(ctx);
                    const auto mss = m_star_star(ctx);
                    const bool ok = std::abs(ms - 0.6136) <= 5e-5 && mss && std::abs(*mss - 1.8130) <= 5e-5;
                    return Outcome{ok, fmt("M*=%.6f M**=%.6f", ms, mss.value_or(NAN))};
                  }});

  list.push_back({2, "y_root(gamma=1.4, k=0.2) = 1.0620 within 5e-4", 1.0, [] {
                    const double r = y_root(HeatingContext(1.4, 0.2));
                    return Outcome{std::abs(r - 1.0620) <= 5e-4, fmt("y_root=%.6f", r)};
                  }});

  list.push_back({3, "Table 1 classifies as (Type1, Type1, Type2, Type3, Type2)", 1.0, [] {
                    const SolutionType want[] = {SolutionType::Type1, SolutionType::Type1, SolutionType::Type2,
                                                 SolutionType::Type3, SolutionType::Type2};
                    std::string got;
                    bool ok = true;
                    for (std::size_t i = 0; i < 5; ++i) {
                      const auto& t = cli::table1()[i];
                      const auto c = classify(t.spec.state(), t.spec.context());
                      ok = ok && c == want[i];
                      got += std::string(i ? "," : "") + std::string(to_string(c));
                    }
                    return Outcome{ok, got};
                  }});

  list.push_back({4, "heating balance < 1e-12 and trend ordering on 1e4 random inputs", 0.0, [] {
                    std::mt19937_64 rng(2024);
                    std::uniform_real_distribution<double> unit(0.0, 1.0);
                    double worst = 0.0;
                    int order_failures = 0;
                    for (int i = 0; i < 10000; ++i) {
                      const double gamma = 1.05 + 1.9 * unit(rng);
                      const bool sub = i % 2 == 0;
                      const double m = sub ? 0.05 + 0.9 * unit(rng) : 1.05 + 4.0 * unit(rng);
                      const double k = 0.95 * k_max(m, GasGamma(gamma)) * (0.01 + 0.99 * unit(rng));
                      const HeatingContext ctx(gamma, k);
                      const double rho = 0.1 + 10.0 * unit(rng);
                      const double p = 0.1 + 10.0 * unit(rng);
                      const PrimitiveState up{rho, m * std::sqrt(gamma * p / rho), p};
                      const auto j = heat_jump(up, ctx);
                      worst = std::max(worst, heating_residuals(up, j.downstream, ctx).worst());
                      const auto& d = j.downstream;
                      const bool ordered =
                          sub ? (d.u > up.u && d.p < up.p && d.rho < up.rho && j.m_plus > j.m_minus && j.m_plus < 1.0)
                              : (d.u < up.u && d.p > up.p && d.rho > up.rho && j.m_plus < j.m_minus && j.m_plus > 1.0);
                      if (!ordered) ++order_failures;
                    }
                    return Outcome{worst < 1e-12 && order_failures == 0,
                                   fmt("worst residual %.2e, ordering failures %d", worst, order_failures)};
                  }});

  list.push_back({5, "M*/M** normal-shock duality < 1e-10 on a 50x50 (gamma, k) grid", 0.0, [] {
                    double worst = 0.0;
                    int points = 0;
                    for (int i = 0; i < 50; ++i) {
                      const double gamma = 1.02 + 1.96 * i / 49.0;
                      const double k_top = 0.99 / (gamma * gamma - 1.0);
                      for (int j = 1; j <= 50; ++j) {
                        const HeatingContext ctx(gamma, k_top * j / 51.0);
                        const auto [r1, r2] = prandtl_pair_check(ctx);
                        worst = std::max({worst, r1, r2});
                        ++points;
                      }
                    }
                    return Outcome{worst < 1e-10, fmt("%d points, worst residual %.2e", points, worst)};
                  }});

  list.push_back({6, "|f5(M1, f6(M1, M4)) - M4| < 1e-10 with Lax on a 100x100 grid", 0.0, [] {
                    const GasGamma g(1.4);
                    double worst = 0.0;
                    int lax_failures = 0;
                    for (int i = 0; i < 100; ++i) {
                      const double m1 = 0.2 + 4.8 * i / 99.0;
                      for (int j = 1; j <= 100; ++j) {
                        const double m4 = m1 * j / 100.0;
                        const double m_sl = f6_inverse(m1, m4, g);
                        if (m1 - m_sl < 1.0 - 1e-12) ++lax_failures;
                        worst = std::max(worst, std::abs(shock_family({m1, m_sl}, g).f5 - m4));
                      }
                    }
                    return Outcome{worst < 1e-10 && lax_failures == 0,
                                   fmt("worst %.2e, Lax failures %d", worst, lax_failures)};
                  }});

  list.push_back({7, "fan conservation audit within 1e-6 (1e6-point quadrature)", 0.0, [] {
                    double worst = 0.0;
                    std::string parts;
                    for (const auto& t : cli::table1()) {
                      const auto fan = solve(t.spec.state(), t.spec.context());
                      const double w = conservation_audit(fan, t.t_end, 1000000).worst();
                      worst = std::max(worst, w);
                      parts += fmt(" %s=%.1e", t.name, w);
                    }
                    return Outcome{worst < 1e-6, "worst relative error" + parts};
                  }});

  list.push_back({8, "Type1/Type2 and Type2/Type3 fans coincide on the boundaries within 1e-6", 1.0, [] {
                    const HeatingContext ctx(1.4, 0.2);
                    const auto u_mss = at_mach(*m_star_star(ctx), 1.4);
                    const double d23 = fan_diff(construct_type2(u_mss, ctx), construct_type3(u_mss, ctx));
                    const auto u_yr = at_mach(y_root(ctx), 1.4);
                    const double d12 = fan_diff(construct_type1(u_yr, ctx), construct_type2(u_yr, ctx));
                    return Outcome{d12 < 1e-6 && d23 < 1e-6, fmt("at y_root %.2e, at M** %.2e", d12, d23)};
                  }});

  list.push_back({9, "T(gamma, k) > 0 on a 40x40 grid", 60.0, [] {
                    cli::ScanOptions opt;  // gamma in [1.05, 2.9], k in (0, min(0.99/(gamma^2-1), 2)]
                    int finite = 0, bad = 0, errors = 0;
                    double t_min = INFINITY;
                    for (const auto& r : cli::scan(opt)) {
                      if (r.error) {
                        ++errors;
                        continue;
                      }
                      if (std::isinf(r.t_value)) continue;
                      ++finite;
                      t_min = std::min(t_min, r.t_value);
                      if (!(r.t_value > 0.0)) ++bad;
                    }
                    return Outcome{bad == 0 && errors == 0 && finite > 0,
                                   fmt("%d finite points, min T %.4f, errors %d", finite, t_min, errors)};
                  }});

  list.push_back({10, "Godunov plateaus within 2% L-inf at n=2001, decreasing over n", 0.0, [] {
                    const auto& runs = refinement_runs();
                    bool ok = true;
                    std::string detail = fmt("order %d;", g_order);
                    for (std::size_t i = 0; i < runs.size(); ++i) {
                      const auto& per = runs[i];
                      bool decreasing = true;
                      std::string seq;
                      for (std::size_t j = 0; j < per.size(); ++j) {
                        const double e = per[j].result.report.worst_linf();
                        seq += fmt("%s%.3g", j ? "," : "", e);
                        if (j && !(e < per[j - 1].result.report.worst_linf())) decreasing = false;
                      }
                      const double final_err = per.back().result.report.worst_linf();
                      const bool test_ok = final_err <= 0.02 && decreasing;
                      ok = ok && test_ok;
                      detail += fmt(" %s[%s]%s", cli::table1()[i].name, seq.c_str(), test_ok ? "" : "x");
                    }
                    return Outcome{ok, detail};
                  }});

  list.push_back({11, "near-origin pressure defect exceeds 2% in at least one test", 0.0, [] {
                    const auto& runs = refinement_runs();
                    double worst = 0.0;
                    std::string detail = "n=2001:";
                    for (std::size_t i = 0; i < runs.size(); ++i) {
                      const double d = runs[i].back().result.report.near_origin_pressure_defect;
                      worst = std::max(worst, d);
                      detail += fmt(" %s=%.3g", cli::table1()[i].name, d);
                    }
                    return Outcome{worst > 0.02, detail};
                  }});

  return list;
}

// Extra context for criterion 10: error measures that are not part of any
// criterion, printed for the record.
void print_refinement_context() {
  const auto& runs = refinement_runs();
  std::printf("  info: plateau errors per test (n: worst L-inf / worst L1 / runtime)\n");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::printf("  info: %s", cli::table1()[i].name);
    for (const auto& r : runs[i]) {
      std::printf("  %d: %.3g / %.3g / %.1fs", r.n, r.result.report.worst_linf(), r.result.report.worst_l1(),
                  r.seconds);
    }
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::set<int> xfail;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--order") && i + 1 < argc) g_order = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--xfail") && i + 1 < argc) {
      for (char* tok = std::strtok(argv[++i], ","); tok; tok = std::strtok(nullptr, ",")) xfail.insert(std::atoi(tok));
    }
    else {
      std::fprintf(stderr, "usage: %s [--order 1|2] [--only N] [--xfail N[,N...]]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  int unexpected = 0;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit_s == 0.0 || s < c.time_limit_s;
    const bool pass = o.pass && in_time;
    const bool expected_fail = xfail.count(c.id) > 0;
    if (!pass) ++failures;
    if (pass == expected_fail) ++unexpected;
    std::printf("[%s] %2d %s: %s (%.2fs%s)%s\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), s,
                in_time ? "" : ", over time limit",
                expected_fail ? (pass ? " [unexpected pass]" : " [expected failure]") : "");
    std::fflush(stdout);
    if (c.id == 10) print_refinement_context();
  }
  std::printf("%d criteria failed, %d unexpected outcomes\n", failures, unexpected);
  return (xfail.empty() ? failures : unexpected) == 0 ? 0 : 1;
}
