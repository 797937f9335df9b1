#pragma once

// Moving-shock relations parametrised by the pre-shock Mach number M1 and the
// shock Mach number M_SL = s/a1, and their inverse in M_SL.

#include <algorithm>
#include <cmath>
#include <string>

#include "dcrp/error.hpp"
#include "dcrp/gas.hpp"
#include "dcrp/roots.hpp"

namespace dcrp {

/// Pre-shock Mach number and shock Mach number of a left-facing shock.
struct ShockFrame {
  double m1;
  double m_sl;

  /// M1 - M_SL = (u1 - s)/a1, the normal Mach number seen by the shock.
  double relative_mach() const noexcept { return m1 - m_sl; }
};

struct ShockRatios {
  double f1;  // rho4/rho1
  double f2;  // p4/p1
  double f3;  // (u4 - s)/(u1 - s)
  double f4;  // u4/u1
  double f5;  // M4
};

inline void require_lax(const ShockFrame& frame, double slack = 1e-12) {
  if (frame.relative_mach() < 1.0 - slack) {
    throw Error(ErrorKind::LaxViolation,
                "shock needs M1 - M_SL >= 1, got " + std::to_string(frame.relative_mach()));
  }
}

inline ShockRatios shock_family(const ShockFrame& frame, GasGamma g) {
  require_lax(frame);
  const double d = frame.relative_mach();
  const double d2 = d * d;
  const double gm1 = g - 1.0;
  const double gp1 = g + 1.0;
  const double f1 = gp1 * d2 / (gm1 * d2 + 2.0);
  const double f2 = (2.0 * g * d2 - g + 1.0) / gp1;
  const double f3 = (gm1 * d2 + 2.0) / (gp1 * d2);
  const double f4 = f3 + frame.m_sl / frame.m1 * (1.0 - f3);
  // 2g(g-1)d^4 + (6g - g^2 - 1)d^2 - 2(g-1) factors as ((g-1)d^2 + 2)(2g d^2 - g + 1)
  const double f5 = ((gm1 * frame.m1 + 2.0 * frame.m_sl) * d + 2.0) /
                    std::sqrt((gm1 * d2 + 2.0) * (2.0 * g * d2 - g + 1.0));
  return {f1, f2, f3, f4, f5};
}

/// Post-shock state and the lab-frame shock speed.
struct ShockedState {
  PrimitiveState state;
  double speed;
};

inline ShockedState apply_shock(const PrimitiveState& pre, double m_sl, GasGamma g) {
  const double a1 = sound_speed(pre, g);
  const ShockFrame frame{pre.u / a1, m_sl};
  const auto r = shock_family(frame, g);
  return {{pre.rho * r.f1, pre.u * r.f4, pre.p * r.f2}, m_sl * a1};
}

/// sigma(x) with x = M1 - M_SL; increasing on x >= 1 and its root gives M_SL.
inline double shock_sigma(double x, double m1, double m4, GasGamma g) {
  const double s1 = m4 * std::sqrt((g - 1.0) * x * x + 2.0) * std::sqrt(2.0 * g - (g - 1.0) / (x * x));
  const double s2 = 2.0 * x - (g + 1.0) * m1 - 2.0 / x;
  return s1 + s2;
}

/// Shock Mach number M_SL with f5(M1, M_SL) = M4 on the Lax branch M1 - M_SL >= 1.
inline double f6_inverse(double m1, double m4, GasGamma g) {
  if (!(m1 > 0.0) || !(m4 > 0.0)) {
    throw Error(ErrorKind::DomainViolation, "f6 needs positive Mach numbers");
  }
  if (m4 > m1 * (1.0 + 1e-14)) {
    throw Error(ErrorKind::DomainViolation,
                "f6 needs M4 <= M1 (got M1=" + std::to_string(m1) + ", M4=" + std::to_string(m4) + ")");
  }
  m4 = std::min(m4, m1);  // absorb rounding at the sonic end
  const auto sigma = [&](double x) { return shock_sigma(x, m1, m4, g); };
  if (sigma(1.0) >= 0.0) return m1 - 1.0;
  double x_hi = std::max(2.0, m1 + 2.0);
  for (int i = 0; i < 200 && sigma(x_hi) <= 0.0; ++i) x_hi *= 2.0;
  const double x = roots::bisect(sigma, 1.0, x_hi);
  return m1 - x;
}

/// Residual of the quartic in x = M1 - M_SL obtained by squaring f5 = M4.
inline double shock_quartic_residual(double m1, double m4, double m_sl, GasGamma g) {
  const double x = m1 - m_sl;
  const double gp1 = g + 1.0;
  const double m42 = m4 * m4;
  const double a = 4.0 - 2.0 * g * (g - 1.0) * m42;
  const double b = -4.0 * gp1 * m1;
  const double c = gp1 * gp1 * m1 * m1 - 8.0 - (6.0 * g - g * g - 1.0) * m42;
  const double d = 4.0 * gp1 * m1;
  const double e = 4.0 + 2.0 * (g - 1.0) * m42;
  return (((a * x + b) * x + c) * x + d) * x + e;
}

}  // namespace dcrp
