#pragma once

// Stationary heating discontinuity: weak-branch solution of the heating
// equations, the maximum heating parameter and the critical Mach numbers.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "dcrp/error.hpp"
#include "dcrp/gas.hpp"

namespace dcrp {

struct HeatingContext {
  GasGamma gamma;
  double k;

  HeatingContext(GasGamma g, double heating) : gamma(g), k(heating) {
    if (!(heating > 0.0) || !std::isfinite(heating)) {
      throw Error(ErrorKind::InvalidParameter,
                  "heating parameter k must be positive, got " + std::to_string(heating));
    }
  }
  HeatingContext(double g, double heating) : HeatingContext(GasGamma(g), heating) {}

  /// k (gamma^2 - 1); M** exists only when this is below one.
  double choke_measure() const noexcept { return k * (gamma * gamma - 1.0); }
};

inline constexpr double kSonicTolerance = 1e-9;
inline constexpr double kChokeClampTolerance = 1e-12;

inline double k_max(double m_minus, GasGamma g) {
  if (!(m_minus > 0.0)) {
    throw Error(ErrorKind::NonPositiveMach, "upstream Mach must be positive, got " + std::to_string(m_minus));
  }
  const double m2 = m_minus * m_minus;
  const double one_minus = 1.0 - m2;
  return one_minus * one_minus / (2.0 * (g + 1.0) * m2 * (1.0 + 0.5 * (g - 1.0) * m2));
}

// Both roots of k = k_max(M). The textbook form divides by 1 - k(gamma^2-1);
// multiplying through by the conjugate gives M*^2 = 1/N+ and M**^2 = 1/N-, which
// stays well conditioned as k(gamma^2-1) -> 1.
namespace detail {
inline double root_sum(const HeatingContext& ctx) {
  const double gp1 = ctx.gamma + 1.0;
  return ctx.k * gp1 + 1.0 + gp1 * std::sqrt(ctx.k * (ctx.k + 1.0));
}
inline double root_difference(const HeatingContext& ctx) {
  const double gp1 = ctx.gamma + 1.0;
  return ctx.k * gp1 + 1.0 - gp1 * std::sqrt(ctx.k * (ctx.k + 1.0));
}
}  // namespace detail

/// Subsonic critical Mach number M* in (0, 1): k_max(M*) = k.
inline double m_star(const HeatingContext& ctx) {
  if (ctx.choke_measure() == 1.0) {
    return std::sqrt(1.0 / (2.0 * (ctx.k * (ctx.gamma + 1.0) + 1.0)));
  }
  return std::sqrt(1.0 / detail::root_sum(ctx));
}

/// Supersonic critical Mach number M*; nullopt means unbounded
/// (k (gamma^2-1) >= 1, no supersonic upstream state admits this much heat).
inline std::optional<double> m_star_star(const HeatingContext& ctx) {
  if (ctx.choke_measure() >= 1.0) return std::nullopt;
  return std::sqrt(1.0 / detail::root_difference(ctx));
}

enum class HeatBranch { Subsonic, Supersonic };

/// Ratios across the heating discontinuity as functions of upstream Mach.
struct HeatRatios {
  double i_value;
  double velocity;  // u+/u- = rho-/rho+
  double pressure;  // p+/p-
  double m_plus;
};

/// I^2 written as (1/M^2 - 1)^2 - 2(gamma+1)(1/M^2 + (gamma-1)/2) k, which is
/// algebraically the usual discriminant with the k = 0 part collapsed.
inline double heat_discriminant(double m, const HeatingContext& ctx) {
  const double inv_m2 = 1.0 / (m * m);
  const double base = inv_m2 - 1.0;
  return base * base - 2.0 * (ctx.gamma + 1.0) * (inv_m2 + 0.5 * (ctx.gamma - 1.0)) * ctx.k;
}

namespace detail {

inline void check_upstream_mach(double m, const HeatingContext& ctx) {
  if (!(m > 0.0)) {
    throw Error(ErrorKind::BackflowUnsupported, "upstream velocity must be positive");
  }
  if (std::abs(m - 1.0) < kSonicTolerance) {
    throw Error(ErrorKind::SonicUpstream, "sonic upstream flow admits no heating");
  }
  const double kmax = k_max(m, ctx.gamma);
  if (ctx.k > kmax * (1.0 + kChokeClampTolerance)) {
    throw Error(ErrorKind::MaxHeatExceeded, "k=" + std::to_string(ctx.k) + " exceeds k_max(" +
                                                std::to_string(m) + ")=" + std::to_string(kmax));
  }
}

inline HeatRatios ratios_with_i(double m, double i, HeatBranch branch, GasGamma g) {
  const double a = g + 1.0 / (m * m);
  const double s = branch == HeatBranch::Subsonic ? 1.0 : -1.0;
  const double vel_num = a - s * i;
  const double p_num = a + s * g * i;
  return {i, vel_num / (g + 1.0), m * m * p_num / (g + 1.0), std::sqrt(vel_num / p_num)};
}

}  // namespace detail

/// Weak-branch ratios for upstream Mach m (branch chosen by m < 1 or m > 1).
inline HeatRatios heat_ratios(double m, const HeatingContext& ctx) {
  detail::check_upstream_mach(m, ctx);
  const double i = std::sqrt(std::max(heat_discriminant(m, ctx), 0.0));
  return detail::ratios_with_i(m, i, m < 1.0 ? HeatBranch::Subsonic : HeatBranch::Supersonic, ctx.gamma);
}

struct HeatJump {
  PrimitiveState upstream;
  PrimitiveState downstream;
  double m_minus;
  double m_plus;
  double i_value;
};

namespace detail {
inline HeatJump apply_ratios(const PrimitiveState& up, double m, const HeatRatios& r) {
  const PrimitiveState down{up.rho / r.velocity, up.u * r.velocity, up.p * r.pressure};
  return {up, down, m, r.m_plus, r.i_value};
}
}  // namespace detail

inline HeatJump heat_jump(const PrimitiveState& upstream, const HeatingContext& ctx) {
  require_valid(upstream, "upstream state");
  if (!(upstream.u > 0.0)) {
    throw Error(ErrorKind::BackflowUnsupported, "heating needs u > 0 upstream");
  }
  const double m = mach(upstream, ctx.gamma);
  return detail::apply_ratios(upstream, m, heat_ratios(m, ctx));
}

/// Jump evaluated exactly at the choke point (I = 0, M+ = 1). The upstream
/// Mach number must already sit on M* or M** to within choke_tol relative in k.
inline HeatJump heat_jump_choked(const PrimitiveState& upstream, const HeatingContext& ctx,
                                 double choke_tol = 1e-8) {
  require_valid(upstream, "upstream state");
  if (!(upstream.u > 0.0)) {
    throw Error(ErrorKind::BackflowUnsupported, "heating needs u > 0 upstream");
  }
  const double m = mach(upstream, ctx.gamma);
  if (std::abs(m - 1.0) < kSonicTolerance) {
    throw Error(ErrorKind::SonicUpstream, "sonic upstream flow admits no heating");
  }
  const double kmax = k_max(m, ctx.gamma);
  if (std::abs(kmax - ctx.k) > choke_tol * ctx.k) {
    throw Error(ErrorKind::DomainViolation, "upstream Mach " + std::to_string(m) + " is not a choke point");
  }
  const auto branch = m < 1.0 ? HeatBranch::Subsonic : HeatBranch::Supersonic;
  return detail::apply_ratios(upstream, m, detail::ratios_with_i(m, 0.0, branch, ctx.gamma));
}

/// Subsonic-branch velocity ratio u+/u- as a function of upstream Mach.
inline double phi(double m, const HeatingContext& ctx) {
  if (!(m < 1.0)) throw Error(ErrorKind::DomainViolation, "phi is defined for subsonic Mach only");
  return heat_ratios(m, ctx).velocity;
}

/// Subsonic-branch pressure ratio p+/p- as a function of upstream Mach.
inline double psi(double m, const HeatingContext& ctx) {
  if (!(m < 1.0)) throw Error(ErrorKind::DomainViolation, "psi is defined for subsonic Mach only");
  return heat_ratios(m, ctx).pressure;
}

/// Residuals of the M* <-> M** normal-shock duality.
inline std::pair<double, double> prandtl_pair_check(const HeatingContext& ctx) {
  const auto mss = m_star_star(ctx);
  if (!mss) {
    throw Error(ErrorKind::BranchUnavailable, "M** is unbounded when k(gamma^2-1) >= 1");
  }
  const double g = ctx.gamma;
  const double ms = m_star(ctx);
  const auto partner = [g](double m) {
    return std::sqrt(((g - 1.0) * m * m + 2.0) / (2.0 * g * m * m - g + 1.0));
  };
  return {std::abs(ms - partner(*mss)), std::abs(*mss - partner(ms))};
}

/// Heat flux Q = k rho- u- (u-^2/2 + h-).
inline double q_from_k(const PrimitiveState& upstream, const HeatingContext& ctx) {
  if (!(upstream.u > 0.0)) {
    throw Error(ErrorKind::BackflowUnsupported, "heat flux needs u > 0 upstream");
  }
  return ctx.k * upstream.rho * upstream.u * (0.5 * upstream.u * upstream.u + enthalpy(upstream, ctx.gamma));
}

}  // namespace dcrp
