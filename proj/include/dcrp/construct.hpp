#pragma once

// Exact self-similar solution of the Euler equations with a point heat source
// at x = 0 and uniform initial data U1. The flow on each side of the heating
// point is treated as its own classical Riemann problem; the two are coupled
// through the heating jump conditions.
//
// Region numbering follows the wave fan from left to right:
//   1 | left shock | 4 | heating (x=0) | 5 | rarefaction | 6 | contact | 7 | right shock | 8 = 1
// Not every wave is present. Three structures exist:
//   Type1: S(1,4) H(4,5) C(5,7) S(7,8)          subsonic heating, no choke
//   Type2: S(1,4) H(4,5) R(5,6) C(6,7) S(7,8)   choked at M4 = M*, M5 = 1
//   Type3: H(1,5) R(5,6) C(6,7) S(7,8)          supersonic heating, M1 >= M**

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcrp/error.hpp"
#include "dcrp/gas.hpp"
#include "dcrp/heating.hpp"
#include "dcrp/roots.hpp"
#include "dcrp/waves.hpp"

namespace dcrp {

enum class SolutionType { Type1, Type2, Type3 };

constexpr std::string_view to_string(SolutionType t) noexcept {
  switch (t) {
    case SolutionType::Type1: return "Type1";
    case SolutionType::Type2: return "Type2";
    case SolutionType::Type3: return "Type3";
  }
  return "Unknown";
}

inline std::optional<SolutionType> parse_solution_type(std::string_view s) {
  if (s == "Type1") return SolutionType::Type1;
  if (s == "Type2") return SolutionType::Type2;
  if (s == "Type3") return SolutionType::Type3;
  return std::nullopt;
}

struct WaveFan {
  SolutionType kind;
  HeatingContext ctx;
  PrimitiveState u1;                // ambient state, also region 8
  std::optional<PrimitiveState> u4; // absent for Type3 (U4 = U1)
  PrimitiveState u5;
  PrimitiveState u6;                // equals u5 for Type1
  PrimitiveState u7;
  std::optional<double> s_left;
  std::optional<double> raref_head;
  std::optional<double> raref_tail;
  double contact_speed;
  double s_right;

  /// State immediately left of the heating point.
  PrimitiveState pre_heating() const { return u4.value_or(u1); }
  GasGamma gamma() const { return ctx.gamma; }
};

// Tie-breaking bands at the structure boundaries.
inline constexpr double kTypeBoundaryTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Coupling residual X(M1, M4) and its value at the choke point, Y(M1).

/// X(M1, M4): velocity mismatch (in units of a1) between the flow leaving the
/// heating point and what a right-facing shock into U1 would require, with the
/// left shock fixed by M_SL = f6(M1, M4). Increasing in M4.
inline double big_x(double m1, double m4, const HeatingContext& ctx) {
  const double ms = m_star(ctx);
  if (!(m1 > 0.0) || !(m4 > 0.0)) {
    throw Error(ErrorKind::DomainViolation, "X needs positive Mach numbers");
  }
  if (m4 > m1 || m4 > ms * (1.0 + 1e-12)) {
    throw Error(ErrorKind::DomainViolation, "X needs M4 <= min(M1, M*)");
  }
  const GasGamma g = ctx.gamma;
  const double m_sl = f6_inverse(m1, m4, g);
  const auto shock = shock_family({m1, m_sl}, g);
  // At the choke point I^2 is zero only up to rounding and sqrt would turn that
  // into an O(1e-8) error, so use I = 0 exactly there.
  const auto heat = m4 >= ms * (1.0 - 1e-12)
                        ? detail::ratios_with_i(ms, 0.0, HeatBranch::Subsonic, g)
                        : heat_ratios(m4, ctx);
  const double r = shock.f2 * heat.pressure;
  return m1 * (shock.f4 * heat.velocity - 1.0) -
         std::sqrt(g.beta() / g) * (r - 1.0) / std::sqrt(1.0 + g.tau() * r);
}

/// Y(M1) = X(M1, M*). Defined for M1 >= M*.
inline double big_y(double m1, const HeatingContext& ctx) {
  const double ms = m_star(ctx);
  if (m1 < ms) {
    throw Error(ErrorKind::DomainViolation, "Y is defined for M1 >= M* only");
  }
  return big_x(m1, ms, ctx);
}

/// Smallest M1 > M* with Y(M1) = 0: the Type1/Type2 demarcation.
inline double y_root(const HeatingContext& ctx) {
  const double ms = m_star(ctx);
  const auto y = [&](double m) { return big_y(m, ctx); };
  double lo = ms;
  double y_lo = y(lo);
  if (y_lo == 0.0) return lo;
  for (double hi = ms * 1.05; hi < 1e3; hi *= 1.05) {
    const double y_hi = y(hi);
    if ((y_hi < 0.0) != (y_lo < 0.0) || y_hi == 0.0) {
      return roots::bisect(y, lo, hi);
    }
    lo = hi;
    y_lo = y_hi;
  }
  throw Error(ErrorKind::NoBracket, "Y(M1) shows no sign change above M*");
}

// ---------------------------------------------------------------------------
// Classification

inline SolutionType classify(const PrimitiveState& u1, const HeatingContext& ctx) {
  require_valid(u1, "ambient state");
  if (!(u1.u > 0.0)) {
    throw Error(ErrorKind::BackflowUnsupported, "ambient velocity must be positive");
  }
  const double m1 = mach(u1, ctx.gamma);
  if (std::abs(m1 - 1.0) < kSonicTolerance) {
    throw Error(ErrorKind::SonicUpstream, "sonic ambient flow admits no heating");
  }
  const double ms = m_star(ctx);
  const auto mss = m_star_star(ctx);
  if (mss && (m1 >= *mss || std::abs(m1 - *mss) < kTypeBoundaryTolerance)) {
    if (big_y(m1, ctx) > kTypeBoundaryTolerance) {
      throw Error(ErrorKind::AmbiguousClassification,
                  "M1 >= M** yet Y(M1) > 0: Type1 and Type3 conditions overlap");
    }
    return SolutionType::Type3;
  }
  if (m1 <= ms) return SolutionType::Type1;
  const double y = big_y(m1, ctx);
  if (std::abs(y) < kTypeBoundaryTolerance) return SolutionType::Type2;
  return y > 0.0 ? SolutionType::Type1 : SolutionType::Type2;
}

// ---------------------------------------------------------------------------
// Constructions

namespace detail {

inline void require_ambient(const PrimitiveState& u1) {
  require_valid(u1, "ambient state");
  if (!(u1.u > 0.0)) {
    throw Error(ErrorKind::BackflowUnsupported, "ambient velocity must be positive");
  }
}

/// Right-hand CRP between the post-heating state and the ambient state.
/// The right wave must be a shock.
inline CrpSolution right_crp(const PrimitiveState& u5, const PrimitiveState& u1, GasGamma g) {
  auto crp = crp_solve(u5, u1, g);
  if (!crp.right_wave.is_shock() && crp.p_star < u1.p * (1.0 - 1e-12)) {
    throw Error(ErrorKind::StructureMismatch, "right-facing wave of CRP(U5, U1) is not a shock");
  }
  if (!crp.right_wave.is_shock()) {
    // zero-strength limit; keep it as an acoustic shock
    const double c = sound_speed(u1, g);
    crp.right_wave = {WaveDescriptor::Kind::Shock, u1.u + c, u1.u + c, u1.u + c};
  }
  return crp;
}

inline double left_shock_speed(const PrimitiveState& u1, double p4, GasGamma g) {
  const double c = sound_speed(u1, g);
  return u1.u - c * std::sqrt((g + 1.0) / (2.0 * g) * p4 / u1.p + (g - 1.0) / (2.0 * g));
}

/// Post-heating fan for Types 2 and 3: left rarefaction from U5, contact, shock.
inline void fill_rarefaction_side(WaveFan& fan, const CrpSolution& crp, GasGamma g) {
  const double head = fan.u5.u - sound_speed(fan.u5, g);
  if (crp.left_wave.is_shock()) {
    // tolerate only a vanishing wave at the Type1/Type2 demarcation
    if (crp.p_star > fan.u5.p * (1.0 + 1e-8)) {
      throw Error(ErrorKind::StructureMismatch, "CRP(U5, U1) has a left shock where a rarefaction is required");
    }
    fan.raref_head = head;
    fan.raref_tail = head;
  } else {
    fan.raref_head = crp.left_wave.head;
    fan.raref_tail = crp.left_wave.tail;
  }
  fan.u6 = crp.star_left();
  fan.u7 = crp.star_right();
  fan.contact_speed = crp.u_star;
  fan.s_right = crp.right_wave.speed;
}

}  // namespace detail

/// Type1: left shock, subsonic heating without choke, contact, right shock.
/// Solves the pressure equation u1 + f_R(p4 psi(M4)) - phi(M4) (u1 - f_L(p4)) = 0
/// for the post-shock pressure p4 by bisection.
inline WaveFan construct_type1(const PrimitiveState& u1, const HeatingContext& ctx) {
  detail::require_ambient(u1);
  const GasGamma g = ctx.gamma;
  const double a1 = sound_speed(u1, g);
  const double m1 = u1.u / a1;
  const double ms = m_star(ctx);
  const double gm1 = g - 1.0;
  const double gp1 = g + 1.0;

  const auto post_shock = [&](double p4) {
    const double rho4 = u1.rho * (gm1 * u1.p + gp1 * p4) / (gm1 * p4 + gp1 * u1.p);
    return PrimitiveState{rho4, u1.u - f_pressure(p4, u1, g), p4};
  };
  const auto residual = [&](double p4) {
    const auto s4 = post_shock(p4);
    if (!(s4.u > 0.0)) return u1.u;  // shock stronger than any admissible root
    const double m4 = mach(s4, g);
    const auto heat = m4 >= ms * (1.0 - 1e-12) ? detail::ratios_with_i(ms, 0.0, HeatBranch::Subsonic, g)
                                                : heat_ratios(m4, ctx);
    return u1.u + f_pressure(p4 * heat.pressure, u1, g) - heat.velocity * s4.u;
  };

  // M4 <= M* requires p4 at least as strong as the shock that lands on M*.
  const double p_lo = m1 <= ms ? u1.p : u1.p * shock_family({m1, f6_inverse(m1, ms, g)}, g).f2;
  const double r_lo = residual(p_lo);
  if (r_lo > 1e-10 * a1) {
    throw Error(ErrorKind::StructureMismatch, "no Type1 root: the ambient flow is choked (Y(M1) < 0)");
  }
  double p4 = p_lo;
  if (r_lo < 0.0) {
    const auto bracket = roots::expand_upward(residual, p_lo, 2.0 * p_lo);
    if (!bracket) throw Error(ErrorKind::NoBracket, "Type1 pressure equation has no sign change");
    p4 = roots::bisect(residual, bracket->lo, bracket->hi);
  }

  const auto s4 = post_shock(p4);
  const double m4 = mach(s4, g);
  const auto jump = std::abs(m4 - ms) <= 1e-12 * ms ? heat_jump_choked(s4, ctx) : heat_jump(s4, ctx);

  WaveFan fan{SolutionType::Type1, ctx, u1, s4, jump.downstream, jump.downstream, u1,
              detail::left_shock_speed(u1, p4, g), std::nullopt, std::nullopt, 0.0, 0.0};
  const auto crp = detail::right_crp(fan.u5, u1, g);
  const double p_tol = 1e-8 * fan.u5.p;
  if (std::abs(crp.p_star - fan.u5.p) > p_tol || std::abs(crp.u_star - fan.u5.u) > 1e-8 * a1) {
    throw Error(ErrorKind::StructureMismatch, "CRP(U5, U1) is not a bare contact plus right shock");
  }
  fan.u7 = crp.star_right();
  fan.contact_speed = fan.u5.u;
  fan.s_right = crp.right_wave.speed;
  return fan;
}

/// Type2: left shock chosen so that M4 = M*, choked heating (M5 = 1), then a
/// rarefaction whose head sits on x = 0, contact and right shock.
inline WaveFan construct_type2(const PrimitiveState& u1, const HeatingContext& ctx) {
  detail::require_ambient(u1);
  const GasGamma g = ctx.gamma;
  const double m1 = mach(u1, g);
  const double ms = m_star(ctx);
  if (m1 < ms) {
    throw Error(ErrorKind::StructureMismatch, "Type2 needs M1 >= M*");
  }
  const double m_sl = f6_inverse(m1, ms, g);
  const auto shocked = apply_shock(u1, m_sl, g);
  const auto jump = heat_jump_choked(shocked.state, ctx);

  WaveFan fan{SolutionType::Type2, ctx, u1, shocked.state, jump.downstream, jump.downstream, u1,
              shocked.speed, std::nullopt, std::nullopt, 0.0, 0.0};
  const auto crp = detail::right_crp(fan.u5, u1, g);
  detail::fill_rarefaction_side(fan, crp, g);
  if (std::abs(*fan.raref_head) > 1e-6 * sound_speed(u1, g)) {
    throw Error(ErrorKind::StructureMismatch, "Type2 rarefaction head is not stationary");
  }
  return fan;
}

/// Type3: supersonic heating of the ambient flow, then rarefaction, contact and
/// right shock. No wave travels left.
inline WaveFan construct_type3(const PrimitiveState& u1, const HeatingContext& ctx) {
  detail::require_ambient(u1);
  const GasGamma g = ctx.gamma;
  const double m1 = mach(u1, g);
  const auto mss = m_star_star(ctx);
  if (!mss || m1 < *mss - kTypeBoundaryTolerance) {
    throw Error(ErrorKind::StructureMismatch, "Type3 needs M1 >= M**");
  }
  const auto jump = std::abs(m1 - *mss) < kTypeBoundaryTolerance ? heat_jump_choked(u1, ctx, 1e-6)
                                                                   : heat_jump(u1, ctx);
  WaveFan fan{SolutionType::Type3, ctx, u1, std::nullopt, jump.downstream, jump.downstream, u1,
              std::nullopt, std::nullopt, std::nullopt, 0.0, 0.0};
  const auto crp = detail::right_crp(fan.u5, u1, g);
  detail::fill_rarefaction_side(fan, crp, g);
  return fan;
}

// ---------------------------------------------------------------------------
// Sampling

/// Exact solution at (x, t). At x = 0 the post-heating side is returned; use
/// x slightly negative for the pre-heating limit.
inline PrimitiveState sample(const WaveFan& fan, double x, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidParameter, "sample time must be positive");
  const double xi = x / t;
  if (xi < 0.0) {
    if (fan.s_left && xi < *fan.s_left) return fan.u1;
    return fan.pre_heating();
  }
  if (fan.raref_head && fan.raref_tail) {
    if (xi < *fan.raref_head) return fan.u5;
    if (xi <= *fan.raref_tail) {
      if (*fan.raref_tail <= *fan.raref_head) return fan.u6;
      return rarefaction_state(fan.u5, xi, fan.gamma(), true);
    }
  }
  if (xi < fan.contact_speed) return fan.u6;
  if (xi < fan.s_right) return fan.u7;
  return fan.u1;
}

// ---------------------------------------------------------------------------
// Invariant suite

namespace detail {

inline double rel_diff(double a, double b, double scale = 0.0) {
  const double denom = std::max({std::abs(a), std::abs(b), scale});
  return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

}  // namespace detail

struct InvariantReport {
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// Residuals of mass, momentum and the heating-energy relation between the
/// pre- and post-heating states, each relative.
struct HeatingResiduals {
  double mass;
  double momentum;
  double energy;
  double worst() const noexcept { return std::max({mass, momentum, energy}); }
};

inline HeatingResiduals heating_residuals(const PrimitiveState& up, const PrimitiveState& down,
                                          const HeatingContext& ctx) {
  const GasGamma g = ctx.gamma;
  const double lhs_e = (0.5 * up.u * up.u + enthalpy(up, g)) * (1.0 + ctx.k);
  const double rhs_e = 0.5 * down.u * down.u + enthalpy(down, g);
  return {detail::rel_diff(up.rho * up.u, down.rho * down.u),
          detail::rel_diff(up.rho * up.u * up.u + up.p, down.rho * down.u * down.u + down.p),
          detail::rel_diff(lhs_e, rhs_e)};
}

/// Worst relative residual of F(b) - F(a) = s (b - a) over the three components.
inline double rankine_hugoniot_residual(const PrimitiveState& a, const PrimitiveState& b, double s, GasGamma g) {
  const auto fa = flux(a, g);
  const auto fb = flux(b, g);
  const auto ua = prim_to_cons(a, g);
  const auto ub = prim_to_cons(b, g);
  const double scale_rho = std::max({std::abs(fa.rho), std::abs(fb.rho), std::abs(s * ua.rho), 1e-300});
  const double scale_mom = std::max({std::abs(fa.mom), std::abs(fb.mom), std::abs(s * ua.mom), 1e-300});
  const double scale_e = std::max({std::abs(fa.energy), std::abs(fb.energy), std::abs(s * ua.energy), 1e-300});
  return std::max({std::abs(fb.rho - fa.rho - s * (ub.rho - ua.rho)) / scale_rho,
                   std::abs(fb.mom - fa.mom - s * (ub.mom - ua.mom)) / scale_mom,
                   std::abs(fb.energy - fa.energy - s * (ub.energy - ua.energy)) / scale_e});
}

inline InvariantReport check_invariants(const WaveFan& fan, double tol = 1e-10) {
  InvariantReport rep;
  const GasGamma g = fan.gamma();
  const double a1 = sound_speed(fan.u1, g);
  const auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };

  for (const auto* s : {&fan.u1, &fan.u5, &fan.u6, &fan.u7}) {
    if (!s->valid()) fail("non-physical intermediate state");
  }
  if (fan.u4 && !fan.u4->valid()) fail("non-physical U4");

  const auto pre = fan.pre_heating();
  if (heating_residuals(pre, fan.u5, fan.ctx).worst() > tol) fail("heating balance violated");

  if (detail::rel_diff(fan.u6.p, fan.u7.p) > tol) fail("contact pressure mismatch");
  if (std::abs(fan.u6.u - fan.u7.u) > tol * a1) fail("contact velocity mismatch");
  if (std::abs(fan.contact_speed - fan.u6.u) > tol * a1) fail("contact speed differs from u6");

  if (rankine_hugoniot_residual(fan.u7, fan.u1, fan.s_right, g) > tol) fail("right shock Rankine-Hugoniot");
  if (!(fan.u7.p >= fan.u1.p * (1.0 - tol))) fail("right wave is not compressive");
  if (fan.s_right < fan.u1.u + a1 - 1e-9 * a1 || fan.s_right > fan.u7.u + sound_speed(fan.u7, g) + 1e-9 * a1) {
    fail("right shock violates Lax condition");
  }

  if (fan.s_left) {
    if (!fan.u4) fail("left shock without region 4");
    else {
      if (rankine_hugoniot_residual(fan.u1, *fan.u4, *fan.s_left, g) > tol) fail("left shock Rankine-Hugoniot");
      if ((fan.u1.u - *fan.s_left) / a1 < 1.0 - 1e-9) fail("left shock violates Lax condition");
    }
    if (*fan.s_left > 1e-9 * a1) fail("left shock moves right");
  }

  const double eps = 1e-9 * a1;
  if (fan.raref_head && fan.raref_tail) {
    if (*fan.raref_head < -1e-8 * a1) fail("rarefaction head moves left");
    if (*fan.raref_tail < *fan.raref_head - eps) fail("rarefaction tail ahead of head");
    if (fan.contact_speed < *fan.raref_tail - eps) fail("contact ahead of rarefaction tail");
    if (detail::rel_diff(entropy_function(fan.u5, g), entropy_function(fan.u6, g)) > tol) {
      fail("rarefaction does not preserve entropy");
    }
    const double inv5 = fan.u5.u + g.beta() * sound_speed(fan.u5, g);
    const double inv6 = fan.u6.u + g.beta() * sound_speed(fan.u6, g);
    if (std::abs(inv5 - inv6) > tol * std::max(std::abs(inv5), a1)) fail("rarefaction Riemann invariant");
  }
  if (fan.contact_speed < -eps) fail("contact moves left");
  if (fan.s_right < fan.contact_speed - eps) fail("right shock behind contact");

  const double m5 = mach(fan.u5, g);
  switch (fan.kind) {
    case SolutionType::Type1: {
      if (!fan.u4 || !fan.s_left) { fail("Type1 needs a left shock"); break; }
      const double m4 = mach(*fan.u4, g);
      if (!(m4 <= m5 + 1e-12 && m5 <= 1.0 + 1e-8)) fail("Type1 needs M4 < M5 < 1");
      if (!(fan.u5.u >= fan.u4->u && fan.u4->u > 0.0)) fail("Type1 needs u5 > u4 > 0");
      if (!(fan.u6 == fan.u5)) fail("Type1 has no rarefaction: U6 must equal U5");
      break;
    }
    case SolutionType::Type2: {
      if (!fan.u4 || !fan.s_left) { fail("Type2 needs a left shock"); break; }
      if (std::abs(m5 - 1.0) > 1e-8) fail("Type2 needs M5 = 1");
      if (!fan.raref_head || std::abs(*fan.raref_head) > 1e-8 * a1) fail("Type2 rarefaction head must sit at x=0");
      if (!(fan.u5.u > fan.u4->u && fan.u4->u > 0.0)) fail("Type2 needs u5 > u4 > 0");
      break;
    }
    case SolutionType::Type3: {
      if (fan.u4 || fan.s_left) fail("Type3 has no left wave");
      const double m1 = mach(fan.u1, g);
      if (!(m1 >= m5 - 1e-12 && m5 >= 1.0 - 1e-8)) fail("Type3 needs M4 > M5 >= 1");
      break;
    }
  }
  return rep;
}

/// Dispatches on classify() and verifies the invariant suite.
inline WaveFan solve(const PrimitiveState& u1, const HeatingContext& ctx) {
  WaveFan fan = [&] {
    switch (classify(u1, ctx)) {
      case SolutionType::Type1: return construct_type1(u1, ctx);
      case SolutionType::Type2: return construct_type2(u1, ctx);
      case SolutionType::Type3: break;
    }
    return construct_type3(u1, ctx);
  }();
  const auto rep = check_invariants(fan);
  if (!rep.ok()) {
    throw Error(ErrorKind::InvariantViolation, "constructed fan fails: " + rep.failures.front());
  }
  return fan;
}

// ---------------------------------------------------------------------------
// Audits and cross-checks

/// Heat flux delivered by the fan's heating discontinuity.
inline double heat_flux(const WaveFan& fan) { return q_from_k(fan.pre_heating(), fan.ctx); }

/// Largest |wave speed| in the fan.
inline double max_wave_speed(const WaveFan& fan) {
  double s = std::abs(fan.s_right);
  if (fan.s_left) s = std::max(s, std::abs(*fan.s_left));
  return std::max(s, std::abs(fan.contact_speed));
}

struct ConservationAudit {
  double mass;      // relative error of integrated mass
  double momentum;  // relative error of integrated momentum
  double energy;    // relative error of integrated energy against E0 + Q T
  double worst() const noexcept { return std::max({mass, momentum, energy}); }
};

/// Midpoint quadrature of the sampled solution over a control volume holding
/// every wave at time t, compared with the initial content (plus Q t of energy).
/// Panels are split at the wave positions so that no quadrature cell straddles
/// a discontinuity; the n_points nodes are shared out by panel length.
inline ConservationAudit conservation_audit(const WaveFan& fan, double t, long n_points = 1000000) {
  const GasGamma g = fan.gamma();
  const double half = 1.1 * max_wave_speed(fan) * t + 1e-3;
  std::vector<double> breaks{-half, 0.0, fan.contact_speed * t, fan.s_right * t, half};
  if (fan.s_left) breaks.push_back(*fan.s_left * t);
  if (fan.raref_head) breaks.push_back(*fan.raref_head * t);
  if (fan.raref_tail) breaks.push_back(*fan.raref_tail * t);
  std::sort(breaks.begin(), breaks.end());

  ConservedState total{0.0, 0.0, 0.0};
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double a = breaks[j];
    const double b = breaks[j + 1];
    if (!(b > a)) continue;
    const long n = std::max(1L, static_cast<long>(static_cast<double>(n_points) * (b - a) / (2.0 * half)));
    const double dx = (b - a) / static_cast<double>(n);
    ConservedState panel{0.0, 0.0, 0.0};
    for (long i = 0; i < n; ++i) {
      panel += prim_to_cons(sample(fan, a + (static_cast<double>(i) + 0.5) * dx, t), g);
    }
    total += panel * dx;
  }
  const auto init = prim_to_cons(fan.u1, g) * (2.0 * half);
  const double q = heat_flux(fan);
  return {detail::rel_diff(total.rho, init.rho), detail::rel_diff(total.mom, init.mom),
          detail::rel_diff(total.energy, init.energy + q * t)};
}

/// Pressure ratios across each nonlinear wave.
struct StrengthRatios {
  double p4_over_p1;
  double p6_over_p5;
  double p8_over_p7;
};

inline StrengthRatios fan_strengths(const WaveFan& fan) {
  return {fan.pre_heating().p / fan.u1.p, fan.u6.p / fan.u5.p, fan.u1.p / fan.u7.p};
}

namespace detail {

/// Root r = p6/p5 of (A r^z + B - M1) sqrt(C r + g - 1) - sqrt(2/g) (C r/(g+1) - 1) = 0,
/// z = (g-1)/(2g): the rarefaction from U5 meeting the right shock into U1,
/// with every velocity scaled by a1.
inline double rarefaction_strength(double m1, double u5_over_u1, double p5_over_p1, double m5, GasGamma g) {
  const double beta = g.beta();
  const double a = -beta * (m1 / m5) * u5_over_u1;
  const double b = u5_over_u1 * m1 + beta * (m1 / m5) * u5_over_u1;
  const double c = (g + 1.0) * p5_over_p1;
  const double z = (g - 1.0) / (2.0 * g);
  const auto h = [&](double r) {
    return (a * std::pow(r, z) + b - m1) * std::sqrt(c * r + g - 1.0) -
           std::sqrt(2.0 / g) * (c / (g + 1.0) * r - 1.0);
  };
  const double h1 = h(1.0);
  if (std::abs(h1) <= 1e-14 * (std::abs(b) + 1.0)) return 1.0;
  double lo = 0.5;
  while ((h(lo) < 0.0) == (h1 < 0.0)) {
    lo *= 0.5;
    if (lo < 1e-12) throw Error(ErrorKind::NoBracket, "rarefaction strength equation has no root in (0, 1]");
  }
  return roots::bisect(h, lo, 1.0);
}

}  // namespace detail

/// Pressure ratios of every nonlinear wave computed from M1 alone, through the
/// Mach-number relations rather than through the state construction.
inline StrengthRatios wave_strength_oracle(double m1, const HeatingContext& ctx, SolutionType kind) {
  const GasGamma g = ctx.gamma;
  const double ms = m_star(ctx);
  switch (kind) {
    case SolutionType::Type1: {
      const double top = std::min(m1, ms);
      const auto x = [&](double m4) { return big_x(m1, m4, ctx); };
      double lo = 0.5 * top;
      while (x(lo) > 0.0) {
        lo *= 0.5;
        if (lo < 1e-8) throw Error(ErrorKind::NoBracket, "X(M1, M4) has no root below min(M1, M*)");
      }
      const double m4 = x(top) <= 0.0 ? top : roots::bisect(x, lo, top);
      const double f2 = shock_family({m1, f6_inverse(m1, m4, g)}, g).f2;
      return {f2, 1.0, 1.0 / (f2 * heat_ratios(m4, ctx).pressure)};
    }
    case SolutionType::Type2: {
      const auto shock = shock_family({m1, f6_inverse(m1, ms, g)}, g);
      const double velocity = (g + 1.0 / (ms * ms)) / (g + 1.0);       // phi at I = 0
      const double pressure = ms * ms * (g + 1.0 / (ms * ms)) / (g + 1.0);  // psi at I = 0
      const double r = detail::rarefaction_strength(m1, velocity * shock.f4, pressure * shock.f2, 1.0, g);
      return {shock.f2, r, 1.0 / (shock.f2 * pressure * r)};
    }
    case SolutionType::Type3: {
      const auto mss = m_star_star(ctx);
      HeatRatios heat{};
      if (mss && std::abs(m1 - *mss) < kTypeBoundaryTolerance) {
        heat = detail::ratios_with_i(m1, 0.0, HeatBranch::Supersonic, g);
      } else {
        heat = heat_ratios(m1, ctx);
      }
      const double r = detail::rarefaction_strength(m1, heat.velocity, heat.pressure, heat.m_plus, g);
      return {1.0, r, 1.0 / (heat.pressure * r)};
    }
  }
  throw Error(ErrorKind::InvalidParameter, "unknown solution type");
}

}  // namespace dcrp
