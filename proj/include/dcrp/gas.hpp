#pragma once

// Ideal-gas thermodynamics shared by every other header.

#include <cmath>
#include <string>

#include "dcrp/error.hpp"

namespace dcrp {

/// Ratio of specific heats, restricted to the open interval (1, 3).
class GasGamma {
 public:
  explicit GasGamma(double gamma) : gamma_(gamma) {
    if (!(gamma > 1.0 && gamma < 3.0)) {
      throw Error(ErrorKind::InvalidGamma,
                  "gamma must satisfy 1 < gamma < 3, got " + std::to_string(gamma));
    }
  }

  double value() const noexcept { return gamma_; }
  operator double() const noexcept { return gamma_; }

  /// 2/(gamma-1)
  double beta() const noexcept { return 2.0 / (gamma_ - 1.0); }
  /// (gamma+1)/(gamma-1)
  double tau() const noexcept { return (gamma_ + 1.0) / (gamma_ - 1.0); }

 private:
  double gamma_;
};

struct PrimitiveState {
  double rho;
  double u;
  double p;

  bool valid() const noexcept { return rho > 0.0 && p > 0.0 && std::isfinite(u); }

  friend bool operator==(const PrimitiveState&, const PrimitiveState&) = default;
};

struct ConservedState {
  double rho;
  double mom;
  double energy;

  ConservedState& operator+=(const ConservedState& o) noexcept {
    rho += o.rho;
    mom += o.mom;
    energy += o.energy;
    return *this;
  }
  ConservedState& operator-=(const ConservedState& o) noexcept {
    rho -= o.rho;
    mom -= o.mom;
    energy -= o.energy;
    return *this;
  }
  ConservedState& operator*=(double s) noexcept {
    rho *= s;
    mom *= s;
    energy *= s;
    return *this;
  }
  friend ConservedState operator+(ConservedState a, const ConservedState& b) noexcept { return a += b; }
  friend ConservedState operator-(ConservedState a, const ConservedState& b) noexcept { return a -= b; }
  friend ConservedState operator*(double s, ConservedState a) noexcept { return a *= s; }
  friend ConservedState operator*(ConservedState a, double s) noexcept { return a *= s; }
};

inline void require_valid(const PrimitiveState& s, const char* what = "state") {
  if (!s.valid()) {
    throw Error(ErrorKind::NonPhysical, std::string(what) + " needs rho > 0 and p > 0 (rho=" +
                                            std::to_string(s.rho) + ", p=" + std::to_string(s.p) + ")");
  }
}

inline double sound_speed(const PrimitiveState& s, GasGamma g) { return std::sqrt(g * s.p / s.rho); }

/// Signed: follows the sign of u.
inline double mach(const PrimitiveState& s, GasGamma g) { return s.u / sound_speed(s, g); }

inline double internal_energy(const PrimitiveState& s, GasGamma g) { return s.p / ((g - 1.0) * s.rho); }

/// h = e + p/rho = gamma p / ((gamma-1) rho)
inline double enthalpy(const PrimitiveState& s, GasGamma g) { return g * s.p / ((g - 1.0) * s.rho); }

inline double total_energy(const PrimitiveState& s, GasGamma g) {
  return s.p / (g - 1.0) + 0.5 * s.rho * s.u * s.u;
}

/// p / rho^gamma, constant along isentropes.
inline double entropy_function(const PrimitiveState& s, GasGamma g) { return s.p / std::pow(s.rho, g.value()); }

inline ConservedState prim_to_cons(const PrimitiveState& s, GasGamma g) {
  return {s.rho, s.rho * s.u, total_energy(s, g)};
}

inline PrimitiveState cons_to_prim(const ConservedState& c, GasGamma g) {
  if (!(c.rho > 0.0)) {
    throw Error(ErrorKind::NonPhysical, "non-positive density " + std::to_string(c.rho));
  }
  const double u = c.mom / c.rho;
  const double p = (g - 1.0) * (c.energy - 0.5 * c.mom * u);
  if (!(p > 0.0)) {
    throw Error(ErrorKind::NonPhysical, "non-positive pressure " + std::to_string(p));
  }
  return {c.rho, u, p};
}

/// Euler flux (rho u, rho u^2 + p, (E + p) u).
inline ConservedState flux(const PrimitiveState& s, GasGamma g) {
  const double e = total_energy(s, g);
  return {s.rho * s.u, s.rho * s.u * s.u + s.p, (e + s.p) * s.u};
}

}  // namespace dcrp
