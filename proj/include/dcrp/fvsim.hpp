#pragma once

// Finite-volume verifier: Godunov's method with exact Riemann fluxes for the
// homogeneous Euler equations, plus a split source that deposits the heat flux
// into the single cell centred on x = 0.

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dcrp/construct.hpp"
#include "dcrp/csv.hpp"
#include "dcrp/error.hpp"
#include "dcrp/gas.hpp"
#include "dcrp/heating.hpp"
#include "dcrp/riemann.hpp"

namespace dcrp {

struct SimConfig {
  int n_cells = 2001;             // odd, so that x = 0 is a cell centre
  double half_width = 10.0;       // domain [-L, L]
  double cfl = 0.45;
  double t_end = 1.0;
  int order = 1;                  // 1: piecewise constant, 2: minmod + Heun
  HeatingContext ctx{1.4, 0.2};
  PrimitiveState u1{1.0, 0.8, 1.0};
  bool source = true;             // false gives the homogeneous control run
  std::optional<double> fixed_q;  // hold Q fixed instead of tracking the upstream cell

  double dx() const noexcept { return 2.0 * half_width / n_cells; }
};

struct SimSnapshot {
  double t = 0.0;
  double dx = 0.0;
  double gamma = 1.4;
  std::vector<double> centers;
  std::vector<ConservedState> states;
  // bookkeeping for the discrete balance
  ConservedState initial_total{0.0, 0.0, 0.0};
  ConservedState boundary_inflow{0.0, 0.0, 0.0};  // time-integrated F(left) - F(right)
  double injected_energy = 0.0;                   // time-integrated Q
  long steps = 0;

  PrimitiveState primitive(std::size_t i) const { return cons_to_prim(states[i], GasGamma(gamma)); }

  ConservedState total() const {
    ConservedState sum{0.0, 0.0, 0.0};
    for (const auto& s : states) sum += s;
    return sum * dx;
  }
};

inline void validate(const SimConfig& cfg) {
  if (cfg.n_cells < 3 || cfg.n_cells % 2 == 0) {
    throw Error(ErrorKind::InvalidParameter, "n_cells must be odd and >= 3 so that x = 0 is a cell centre");
  }
  if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0)) throw Error(ErrorKind::InvalidParameter, "cfl must lie in (0, 1)");
  if (!(cfg.t_end > 0.0)) throw Error(ErrorKind::InvalidParameter, "t_end must be positive");
  if (!(cfg.half_width > 0.0)) throw Error(ErrorKind::InvalidParameter, "domain half width must be positive");
  if (cfg.order != 1 && cfg.order != 2) throw Error(ErrorKind::InvalidParameter, "order must be 1 or 2");
  require_valid(cfg.u1, "initial state");
  if (cfg.fixed_q && !(*cfg.fixed_q >= 0.0)) throw Error(ErrorKind::InvalidParameter, "fixed Q must be >= 0");
}

/// Smallest symmetric domain half width that keeps the exact fan away from the
/// boundary at t_end, with a relative margin.
inline double required_half_width(const WaveFan& fan, double t_end, double margin = 1.1) {
  return margin * max_wave_speed(fan) * t_end;
}

namespace detail {

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

class GodunovSolver {
 public:
  explicit GodunovSolver(const SimConfig& cfg) : cfg_(cfg), g_(cfg.ctx.gamma), n_(cfg.n_cells), dx_(cfg.dx()) {}

  SimSnapshot run() {
    SimSnapshot snap;
    snap.dx = dx_;
    snap.gamma = g_.value();
    snap.centers.resize(n_);
    for (int i = 0; i < n_; ++i) snap.centers[i] = -cfg_.half_width + (i + 0.5) * dx_;
    snap.states.assign(n_, prim_to_cons(cfg_.u1, g_));
    snap.initial_total = snap.total();

    std::vector<ConservedState> stage(n_);
    double t = 0.0;
    while (t < cfg_.t_end) {
      double dt = cfg_.cfl * dx_ / max_signal_speed(snap.states);
      if (t + dt >= cfg_.t_end) dt = cfg_.t_end - t;
      if (cfg_.order == 1) {
        advance(snap.states, snap.states, stage, dt, snap, 1.0);
        snap.states.swap(stage);
        if (cfg_.source) add_source(snap.states, snap.states, dt, snap, 1.0);
      } else {
        // Heun: U1 = U + dt R(U); U^{n+1} = (U + U1 + dt R(U1)) / 2, source inside each stage
        std::vector<ConservedState> first(n_);
        advance(snap.states, snap.states, first, dt, snap, 0.5);
        if (cfg_.source) add_source(first, snap.states, dt, snap, 0.5);
        advance(first, first, stage, dt, snap, 0.5);
        if (cfg_.source) add_source(stage, first, dt, snap, 0.5);
        for (int i = 0; i < n_; ++i) snap.states[i] = 0.5 * (snap.states[i] + stage[i]);
      }
      check_positivity(snap.states);
      t += dt;
      ++snap.steps;
    }
    snap.t = cfg_.t_end;
    return snap;
  }

 private:
  double max_signal_speed(std::span<const ConservedState> u) const {
    double s = 0.0;
    for (const auto& c : u) {
      const auto w = cons_to_prim(c, g_);
      s = std::max(s, std::abs(w.u) + sound_speed(w, g_));
    }
    return s;
  }

  PrimitiveState cell(std::span<const PrimitiveState> w, int i) const {
    return w[std::clamp(i, 0, n_ - 1)];  // zero-gradient ghosts
  }

  ConservedState interface_flux(const PrimitiveState& l, const PrimitiveState& r) const {
    if (l == r) return flux(l, g_);
    return flux(crp_sample(crp_solve(l, r, g_), 0.0), g_);
  }

  /// out = base + dt * (flux divergence of `from`), accumulating boundary fluxes with `weight`.
  void advance(std::span<const ConservedState> from, std::span<const ConservedState> base,
               std::vector<ConservedState>& out, double dt, SimSnapshot& snap, double weight) {
    std::vector<PrimitiveState> w(n_);
    for (int i = 0; i < n_; ++i) w[i] = cons_to_prim(from[i], g_);

    // face values on each side of interface i-1/2, i = 0..n
    std::vector<ConservedState> faces(n_ + 1);
    for (int i = 0; i <= n_; ++i) {
      PrimitiveState left = cell(w, i - 1);
      PrimitiveState right = cell(w, i);
      if (cfg_.order == 2) {
        left = reconstruct(w, i - 1, +0.5);
        right = reconstruct(w, i, -0.5);
      }
      faces[i] = interface_flux(left, right);
    }
    const double lambda = dt / dx_;
    for (int i = 0; i < n_; ++i) out[i] = base[i] - lambda * (faces[i + 1] - faces[i]);
    snap.boundary_inflow += (weight * dt) * (faces[0] - faces[n_]);
  }

  PrimitiveState reconstruct(std::span<const PrimitiveState> w, int i, double side) const {
    const auto c = cell(w, i);
    const auto l = cell(w, i - 1);
    const auto r = cell(w, i + 1);
    const PrimitiveState face{c.rho + side * minmod(c.rho - l.rho, r.rho - c.rho),
                              c.u + side * minmod(c.u - l.u, r.u - c.u),
                              c.p + side * minmod(c.p - l.p, r.p - c.p)};
    return face.valid() ? face : c;
  }

  /// target += dt Q / dx in the source cell, with Q from `from`'s upstream cell.
  void add_source(std::vector<ConservedState>& target, std::span<const ConservedState> from, double dt,
                  SimSnapshot& snap, double weight) {
    const int mid = n_ / 2;
    double q = 0.0;
    if (cfg_.fixed_q) {
      q = *cfg_.fixed_q;
    } else {
      const auto upstream = cons_to_prim(from[mid - 1], g_);
      q = q_from_k(upstream, cfg_.ctx);
    }
    target[mid].energy += dt * q / dx_;
    snap.injected_energy += weight * dt * q;
  }

  void check_positivity(std::span<const ConservedState> u) const {
    for (int i = 0; i < n_; ++i) {
      const auto& c = u[i];
      const double e_int = c.energy - 0.5 * c.mom * c.mom / c.rho;
      if (!(c.rho > 0.0) || !(e_int > 0.0) || !std::isfinite(c.energy)) {
        throw Error(ErrorKind::PositivityLoss, "cell " + std::to_string(i) + " lost positivity");
      }
    }
  }

  const SimConfig& cfg_;
  GasGamma g_;
  int n_;
  double dx_;
};

}  // namespace detail

/// Advance uniform initial data to t_end. With the source on, the exact fan
/// for (u1, ctx) is built first to guard against waves reaching the boundary.
inline SimSnapshot run(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.source) {
    const auto fan = solve(cfg.u1, cfg.ctx);
    const double reach = max_wave_speed(fan) * cfg.t_end;
    if (reach >= cfg.half_width - 2.0 * cfg.dx()) {
      throw Error(ErrorKind::BoundaryContaminated,
                  "fastest wave reaches x=" + std::to_string(reach) + " but the domain ends at " +
                      std::to_string(cfg.half_width));
    }
  }
  return detail::GodunovSolver(cfg).run();
}

// ---------------------------------------------------------------------------
// Comparison against the exact fan

struct RegionError {
  std::string name;   // region label, e.g. "4"
  double x_begin;
  double x_end;
  int n_cells = 0;    // cells used in the metric
  bool empty = false; // narrower than 2 * exclusion radius
  double linf = 0.0;  // max relative error over rho, u, p
  double l1 = 0.0;    // mean relative error over rho, u, p
};

struct ComparisonReport {
  std::vector<RegionError> regions;
  int exclusion_radius = 0;
  double near_origin_pressure_defect = 0.0;  // max relative p error within the excluded band around x = 0

  double worst_linf() const {
    double w = 0.0;
    for (const auto& r : regions) if (!r.empty) w = std::max(w, r.linf);
    return w;
  }
  double worst_l1() const {
    double w = 0.0;
    for (const auto& r : regions) if (!r.empty) w = std::max(w, r.l1);
    return w;
  }
  const RegionError* find(const std::string& name) const {
    for (const auto& r : regions) if (r.name == name) return &r;
    return nullptr;
  }
};

/// Constant regions of the fan at time t as [x_begin, x_end] intervals.
inline std::vector<RegionError> fan_regions(const WaveFan& fan, double t, double half_width) {
  std::vector<RegionError> out;
  const auto add = [&](const char* name, double a, double b) {
    if (b > a) out.push_back({name, a, b});
  };
  if (fan.s_left) {
    add("1", -half_width, *fan.s_left * t);
    add("4", *fan.s_left * t, 0.0);
  } else {
    add("1", -half_width, 0.0);
  }
  if (fan.raref_head && fan.raref_tail) {
    add("5", 0.0, *fan.raref_head * t);
    add("6", *fan.raref_tail * t, fan.contact_speed * t);
  } else {
    add("5", 0.0, fan.contact_speed * t);
  }
  add("7", fan.contact_speed * t, fan.s_right * t);
  add("8", fan.s_right * t, half_width);
  return out;
}

inline ComparisonReport compare_to_exact(const SimSnapshot& snap, const WaveFan& fan, int exclusion_radius = 5) {
  ComparisonReport rep;
  rep.exclusion_radius = exclusion_radius;
  const double dx = snap.dx;
  const double half_width = 0.5 * dx * static_cast<double>(snap.centers.size());
  const double band = exclusion_radius * dx;
  rep.regions = fan_regions(fan, snap.t, half_width);

  const auto rel = [](double num, double exact) { return std::abs(num - exact) / std::max(std::abs(exact), 1e-300); };

  for (auto& region : rep.regions) {
    const bool at_left_edge = region.x_begin <= -half_width;
    const bool at_right_edge = region.x_end >= half_width;
    const double a = at_left_edge ? region.x_begin : region.x_begin + band;
    const double b = at_right_edge ? region.x_end : region.x_end - band;
    if (region.x_end - region.x_begin < 2.0 * band || !(b > a)) {
      region.empty = true;
      continue;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < snap.centers.size(); ++i) {
      const double x = snap.centers[i];
      if (x < a || x > b || std::abs(x) < band) continue;
      const auto num = snap.primitive(i);
      const auto exact = sample(fan, x, snap.t);
      const double e = std::max({rel(num.rho, exact.rho), rel(num.u, exact.u), rel(num.p, exact.p)});
      region.linf = std::max(region.linf, e);
      sum += e;
      ++region.n_cells;
    }
    if (region.n_cells == 0) {
      region.empty = true;
    } else {
      region.l1 = sum / region.n_cells;
    }
  }

  // The source cell straddles the heating jump, so it is measured against the
  // pressure interval spanned by the two exact side states.
  const double p_minus = fan.pre_heating().p;
  const double p_plus = sample(fan, 0.0, snap.t).p;
  const double p_lo = std::min(p_minus, p_plus);
  const double p_hi = std::max(p_minus, p_plus);
  for (std::size_t i = 0; i < snap.centers.size(); ++i) {
    const double x = snap.centers[i];
    if (std::abs(x) > band) continue;
    const double p = snap.primitive(i).p;
    double defect;
    if (std::abs(x) < 0.5 * dx) {
      defect = p < p_lo ? (p_lo - p) / p_lo : (p > p_hi ? (p - p_hi) / p_hi : 0.0);
    } else {
      defect = rel(p, sample(fan, x, snap.t).p);
    }
    rep.near_origin_pressure_defect = std::max(rep.near_origin_pressure_defect, defect);
  }
  return rep;
}

/// Exact fan sampled at the snapshot's cell centres.
inline SimSnapshot sample_onto_grid(const WaveFan& fan, const SimSnapshot& grid) {
  SimSnapshot out = grid;
  for (std::size_t i = 0; i < grid.centers.size(); ++i) {
    out.states[i] = prim_to_cons(sample(fan, grid.centers[i], grid.t), fan.gamma());
  }
  return out;
}

inline void write_snapshot_csv(std::ostream& os, const SimSnapshot& snap) {
  os << "x,rho,u,p\n";
  for (std::size_t i = 0; i < snap.centers.size(); ++i) {
    const auto w = snap.primitive(i);
    csv::write_row(os, {snap.centers[i], w.rho, w.u, w.p});
  }
}

inline void write_report(std::ostream& os, const ComparisonReport& rep) {
  os << "region,x_begin,x_end,cells,linf,l1,status\n";
  for (const auto& r : rep.regions) {
    os << r.name << ',' << csv::format(r.x_begin) << ',' << csv::format(r.x_end) << ',' << r.n_cells << ','
       << csv::format(r.linf) << ',' << csv::format(r.l1) << ',' << (r.empty ? "EmptyRegion" : "ok") << '\n';
  }
  os << "near_origin_pressure_defect," << csv::format(rep.near_origin_pressure_defect) << '\n';
}

}  // namespace dcrp
