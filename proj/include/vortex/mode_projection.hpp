#pragma once

// Condensate mode functions, Raman Rabi profiles and the quadrature-based
// recomputation of the projected-equation coefficients.

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vortex/condensate.hpp"
#include "vortex/exec.hpp"
#include "vortex/grid.hpp"

namespace vortex {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

enum class Handedness { plus, minus };

struct CondensateModeSpec {
  double L_perp = 2.35e-6;  // [m]
  double L_z = 1.4e-6;      // [m]
  int ell = 2;              // vortex charge magnitude, >= 1
  Handedness handedness = Handedness::plus;

  void validate() const;
  CondensateModeSpec with(Handedness h) const {
    CondensateModeSpec out = *this;
    out.handedness = h;
    return out;
  }
};

// Normalised Gaussian ground mode.
double psi_g(const Vec3& r, const CondensateModeSpec& spec);

// (x +- i y)^|ell| / (sqrt(|ell|!) L_perp^|ell|) * psi_g
std::complex<double> psi_v(const Vec3& r, const CondensateModeSpec& spec);

struct RabiProfileSpec {
  std::complex<double> a_plus{1.0 / 1.4142135623730951, 0.0};
  std::complex<double> a_minus{1.0 / 1.4142135623730951, 0.0};
  double omega0 = 1.0;       // atom-field Rabi rate
  double waist = 47e-6;      // [m]
  int ell = 2;
  // Longitudinal wavenumber [1/m]. Zero by default: in the co-propagating
  // Raman pair the drive carries the opposite exp(-ikz), so the product is
  // z-independent.
  double k = 0.0;

  void validate() const;
};

enum class Branch { plus, minus };

// a_+- Omega0 exp(-r^2/w^2) (sqrt2 r / w)^|ell| exp(+-i ell phi) exp(i k z).
// With drop_gaussian the radial exp(-r^2/w^2) envelope is omitted.
std::complex<double> rabi_profile(const Vec3& r, const RabiProfileSpec& spec, Branch branch,
                                  bool drop_gaussian = false);

// z = 0 slice of beta+ psi_v+ + beta- psi_v- + admixture * psi_g.
PlaneField condensate_plane_field(const CondensateModeSpec& spec, std::complex<double> beta_plus,
                                  std::complex<double> beta_minus,
                                  std::complex<double> admixture = 0.0);

// <a|b> by tensor Gauss-Hermite quadrature with axis scales (L_perp, L_perp,
// L_z), which is exact for products of two modes of this family.
std::complex<double> mode_overlap(const std::function<std::complex<double>(const Vec3&)>& a,
                                  const std::function<std::complex<double>(const Vec3&)>& b,
                                  const CondensateModeSpec& spec, int order,
                                  Exec exec = Exec::parallel);

// <psi|T + V|psi> / hbar for the transverse-isotropic harmonic trap.
double mode_energy_rate(const CondensateModeSpec& spec, const TrapSpec& trap, bool vortex,
                        int order, Exec exec = Exec::parallel);

struct CoefficientEntry {
  std::string name;
  std::optional<double> printed_value;
  double recomputed = 0.0;
  // |recomputed - printed| / |printed| (absolute when the printed value is 0).
  std::optional<double> deviation;
  // |value at 2 * order - value at order|.
  double error_estimate = 0.0;
  // Set when the deviation exceeds the entry's tolerance.
  bool flagged = false;
  std::string note;
};

struct CoefficientReport {
  int order = 0;
  std::vector<CoefficientEntry> entries;

  const CoefficientEntry& at(const std::string& name) const;
};

inline constexpr int kDefaultProjectionOrder = 24;
// Relative (absolute below 1) change between order and 2 * order above which
// the report is rejected as unconverged.
inline constexpr double kConvergenceTolerance = 1e-3;

// Mode-overlap integrals behind the projected equations, side by side with
// the printed coefficients. Uses the charge `spec.ell` (printed values only
// apply to charge 2). Nonlinear terms are expressed as multiples of
// kappa_from_trap(trap), the energy offset as a multiple of
// trap.omega_perp, and the coupling overlap per unit a_+- Omega0. Every entry
// is recomputed at twice the order; NumericalError when they disagree by more
// than kConvergenceTolerance.
CoefficientReport projected_coefficients(const CondensateModeSpec& spec, const TrapSpec& trap,
                                         const RabiProfileSpec& rabi,
                                         int order = kDefaultProjectionOrder,
                                         Exec exec = Exec::parallel);

// CSV with columns name, printed, recomputed, deviation, error_estimate, order,
// flagged, note.
void write_coefficient_report(std::ostream& os, const CoefficientReport& report);

}  // namespace vortex
