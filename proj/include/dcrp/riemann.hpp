#pragma once

// Exact solver for the classical Riemann problem of the ideal-gas Euler
// equations, with self-similar sampling.

#include <algorithm>
#include <cmath>
#include <string>

#include "dcrp/error.hpp"
#include "dcrp/gas.hpp"
#include "dcrp/roots.hpp"

namespace dcrp {

/// Two-branch pressure function: velocity change across a wave that takes the
/// reference state to pressure p (shock for p > p_ref, rarefaction otherwise).
inline double f_pressure(double p, const PrimitiveState& ref, GasGamma g) {
  if (!(p > 0.0)) {
    throw Error(ErrorKind::NonPositivePressure, "pressure must be positive, got " + std::to_string(p));
  }
  if (p > ref.p) {
    const double a = 2.0 / ((g + 1.0) * ref.rho);
    const double b = ref.p * (g - 1.0) / (g + 1.0);
    return (p - ref.p) * std::sqrt(a / (p + b));
  }
  const double c = sound_speed(ref, g);
  return 2.0 * c / (g - 1.0) * (std::pow(p / ref.p, (g - 1.0) / (2.0 * g)) - 1.0);
}

inline double f_pressure_derivative(double p, const PrimitiveState& ref, GasGamma g) {
  if (p > ref.p) {
    const double a = 2.0 / ((g + 1.0) * ref.rho);
    const double b = ref.p * (g - 1.0) / (g + 1.0);
    return std::sqrt(a / (p + b)) * (1.0 - 0.5 * (p - ref.p) / (p + b));
  }
  const double c = sound_speed(ref, g);
  return std::pow(p / ref.p, -(g + 1.0) / (2.0 * g)) / (ref.rho * c);
}

struct WaveDescriptor {
  enum class Kind { Shock, Rarefaction };
  Kind kind;
  double speed = 0.0;  // shock speed (shock only)
  double head = 0.0;   // rarefaction head (edge adjacent to the outer state)
  double tail = 0.0;   // rarefaction tail (edge adjacent to the star state)

  bool is_shock() const noexcept { return kind == Kind::Shock; }
};

struct CrpSolution {
  PrimitiveState left;
  PrimitiveState right;
  double gamma;
  double p_star;
  double u_star;
  double rho_star_left;
  double rho_star_right;
  WaveDescriptor left_wave;
  WaveDescriptor right_wave;

  PrimitiveState star_left() const noexcept { return {rho_star_left, u_star, p_star}; }
  PrimitiveState star_right() const noexcept { return {rho_star_right, u_star, p_star}; }
};

inline double crp_pressure_residual(double p, const PrimitiveState& left, const PrimitiveState& right,
                                    GasGamma g) {
  return f_pressure(p, left, g) + f_pressure(p, right, g) + (right.u - left.u);
}

/// State inside a centred rarefaction fan at xi = x/t. `outer` is the state on
/// the far side of the fan; left_facing selects the u - a family.
inline PrimitiveState rarefaction_state(const PrimitiveState& outer, double xi, GasGamma g, bool left_facing) {
  const double c = sound_speed(outer, g);
  const double gp1 = g + 1.0;
  const double gm1 = g - 1.0;
  const double sign = left_facing ? 1.0 : -1.0;
  const double base = 2.0 / gp1 + sign * gm1 / (gp1 * c) * (outer.u - xi);
  const double u = 2.0 / gp1 * (sign * c + 0.5 * gm1 * outer.u + xi);
  return {outer.rho * std::pow(base, 2.0 / gm1), u, outer.p * std::pow(base, 2.0 * g / gm1)};
}

namespace detail {

inline double star_density(const PrimitiveState& s, double p_star, GasGamma g) {
  const double ratio = p_star / s.p;
  if (p_star > s.p) {
    const double g6 = (g - 1.0) / (g + 1.0);
    return s.rho * (ratio + g6) / (g6 * ratio + 1.0);
  }
  return s.rho * std::pow(ratio, 1.0 / g);
}

inline WaveDescriptor describe_wave(const PrimitiveState& s, double p_star, double u_star, GasGamma g,
                                    bool left_side) {
  const double c = sound_speed(s, g);
  const double sign = left_side ? -1.0 : 1.0;
  if (p_star > s.p) {
    const double ratio = p_star / s.p;
    const double speed = s.u + sign * c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    return {WaveDescriptor::Kind::Shock, speed, speed, speed};
  }
  const double c_star = c * std::pow(p_star / s.p, (g - 1.0) / (2.0 * g));
  return {WaveDescriptor::Kind::Rarefaction, 0.0, s.u + sign * c, u_star + sign * c_star};
}

}  // namespace detail

/// Exact solution of the classical Riemann problem. The star pressure is found
/// by Newton iteration safeguarded with bisection on the monotone residual.
inline CrpSolution crp_solve(const PrimitiveState& left, const PrimitiveState& right, GasGamma g) {
  require_valid(left, "left state");
  require_valid(right, "right state");
  const double cl = sound_speed(left, g);
  const double cr = sound_speed(right, g);
  const double du = right.u - left.u;
  if (2.0 / (g - 1.0) * (cl + cr) <= du) {
    throw Error(ErrorKind::VacuumGenerated, "initial states separate fast enough to create vacuum");
  }

  const auto residual = [&](double p) { return crp_pressure_residual(p, left, right, g); };

  double lo = 1e-12 * std::min(left.p, right.p);
  if (residual(lo) >= 0.0) {
    throw Error(ErrorKind::VacuumGenerated, "star pressure collapses towards zero");
  }
  const auto bracket = roots::expand_upward(residual, lo, 10.0 * std::max(left.p, right.p));
  if (!bracket) throw Error(ErrorKind::NoConvergence, "could not bracket star pressure");
  lo = bracket->lo;
  double hi = bracket->hi;

  // Two-rarefaction guess is exact when both waves are rarefactions.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((cl + cr - 0.5 * (g - 1.0) * du) / (cl / std::pow(left.p, z) + cr / std::pow(right.p, z)),
                      1.0 / z);
  if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);

  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = residual(p);
    if (f == 0.0) {
      converged = true;
      break;
    }
    if (f < 0.0) lo = p; else hi = p;
    const double df = f_pressure_derivative(p, left, g) + f_pressure_derivative(p, right, g);
    double next = p - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - p) <= 1e-15 * p || hi - lo <= 1e-15 * hi) {
      p = next;
      converged = true;
      break;
    }
    p = next;
  }
  if (!converged) throw Error(ErrorKind::NoConvergence, "star pressure iteration did not converge");

  const double u_star = 0.5 * (left.u + right.u) + 0.5 * (f_pressure(p, right, g) - f_pressure(p, left, g));
  return {left,
          right,
          g.value(),
          p,
          u_star,
          detail::star_density(left, p, g),
          detail::star_density(right, p, g),
          detail::describe_wave(left, p, u_star, g, true),
          detail::describe_wave(right, p, u_star, g, false)};
}

/// Self-similar state at xi = x/t.
inline PrimitiveState crp_sample(const CrpSolution& sol, double xi) {
  const GasGamma g(sol.gamma);
  if (xi <= sol.u_star) {
    const auto& w = sol.left_wave;
    if (w.is_shock()) return xi < w.speed ? sol.left : sol.star_left();
    if (xi <= w.head) return sol.left;
    if (xi >= w.tail) return sol.star_left();
    return rarefaction_state(sol.left, xi, g, true);
  }
  const auto& w = sol.right_wave;
  if (w.is_shock()) return xi > w.speed ? sol.right : sol.star_right();
  if (xi >= w.head) return sol.right;
  if (xi <= w.tail) return sol.star_right();
  return rarefaction_state(sol.right, xi, g, false);
}

}  // namespace dcrp
