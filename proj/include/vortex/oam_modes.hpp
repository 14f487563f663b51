#pragma once

// Laguerre-Gaussian beam modes evaluated at the beam waist (z = 0).

#include <complex>
#include <cstdint>

#include "vortex/exec.hpp"
#include "vortex/grid.hpp"

namespace vortex {

// Largest p + |ell| for which factorials stay exact in 64-bit arithmetic.
inline constexpr int kMaxModeOrder = 20;

struct LgModeSpec {
  int p = 0;          // radial node count
  int ell = 0;        // winding number; sign gives handedness
  double w0 = 1.0;    // beam waist [m]

  // Throws ConfigError on p < 0, w0 <= 0 or p + |ell| > kMaxModeOrder.
  void validate() const;
  bool operator==(const LgModeSpec&) const = default;
};

struct CylindricalPoint {
  double rho = 0.0;  // [m], >= 0
  double phi = 0.0;  // [rad], wrapped into [0, 2 pi)
  double z = 0.0;    // [m]; modes are only evaluated at the waist

  static CylindricalPoint from_cartesian(double x, double y, double z = 0.0);
};

// Wraps an angle into [0, 2 pi).
double wrap_angle(double phi);

// n! for n <= kMaxModeOrder, exact.
std::uint64_t exact_factorial(int n);

// Generalised Laguerre polynomial L_p^{a}(x) from its explicit finite sum.
// Coefficients are exact binomials divided by m!.
double assoc_laguerre(int p, int ell_abs, double x);

// Normalised LG_p^ell at the waist.
std::complex<double> lg_amplitude(const LgModeSpec& spec, const CylindricalPoint& point);

// Samples lg_amplitude on the n x n grid described in grid.hpp.
ComplexGrid sample_mode_grid(const LgModeSpec& spec, double half_width, int n,
                             Exec exec = Exec::parallel);

// Integral of |LG|^2 over the plane. Gauss-Legendre panels in rho on
// [0, 8 w0] and the periodic trapezoid rule in phi.
double lg_norm(const LgModeSpec& spec, Exec exec = Exec::parallel);

}  // namespace vortex
