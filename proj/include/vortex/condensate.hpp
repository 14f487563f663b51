#pragma once

// Projected three-mode condensate dynamics: the non-rotating amplitude alpha
// and the vortex amplitudes beta_plus / beta_minus (charge +ell / -ell),
// coupled by a Raman drive whose spatial structure carries the optical
// superposition a_plus |ell> + a_minus |-ell>.
//
// With Omega_R the effective coupling and delta(t) the two-photon detuning,
//
//   i d(alpha)/dt   = 3 kappa |alpha|^2 alpha
//                     + Omega_R (conj(a+) beta+ + conj(a-) beta-)
//   i d(beta+-)/dt  = (delta + 2 omega_perp + kappa/2 (|beta+|^2 + |beta-|^2)) beta+-
//                     + Omega_R a+- alpha
//
// All rates are used exactly as given (no 2 pi conversion) unless the caller
// rescales them; time is in seconds.

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vortex/dop853.hpp"

namespace vortex {

using cplx = std::complex<double>;

struct CondensateAmplitudes {
  cplx alpha{1.0, 0.0};
  cplx beta_plus{};
  cplx beta_minus{};

  double population_alpha() const { return std::norm(alpha); }
  double population_plus() const { return std::norm(beta_plus); }
  double population_minus() const { return std::norm(beta_minus); }
  double norm2() const { return population_alpha() + population_plus() + population_minus(); }

  CondensateAmplitudes& operator*=(cplx s) {
    alpha *= s;
    beta_plus *= s;
    beta_minus *= s;
    return *this;
  }
  bool operator==(const CondensateAmplitudes&) const = default;
};

// Only charge 2 has projected equations with printed coefficients.
inline constexpr int kProjectedCharge = 2;

struct PhysicalParams {
  double omega_perp = 132.0;  // transverse trap rate
  double kappa = 422.0;       // reduced interaction rate
  double coupling = 132.0;    // Raman coupling Omega_R; defaults to omega_perp
  cplx a_plus{1.0 / 1.4142135623730951, 0.0};
  cplx a_minus{1.0 / 1.4142135623730951, 0.0};
  int ell = kProjectedCharge;

  // Throws ConfigError when a rate is negative or non-finite, when
  // |a+|^2 + |a-|^2 deviates from 1 by more than 1e-12, or ell != 2.
  void validate() const;
  // Every rate multiplied by `factor` (e.g. 2 pi to read them as cyclic).
  PhysicalParams scaled(double factor) const;
  bool operator==(const PhysicalParams&) const = default;
};

struct DetuningSchedule {
  enum class Kind { constant, linear };
  Kind kind = Kind::constant;
  double delta0 = 0.0;  // detuning at t = 0
  double slope = 0.0;   // per second, linear schedules only

  static DetuningSchedule constant(double delta) { return {Kind::constant, delta, 0.0}; }
  static DetuningSchedule linear(double delta0, double slope) { return {Kind::linear, delta0, slope}; }

  double operator()(double t) const { return kind == Kind::linear ? delta0 + slope * t : delta0; }
  DetuningSchedule scaled(double factor) const;
  bool operator==(const DetuningSchedule&) const = default;
};

std::string to_string(DetuningSchedule::Kind kind);

struct TrapSpec {
  double omega_perp = 132.0;       // [1/s]
  double omega_z = 132.0;          // [1/s]
  double L_perp = 2.35e-6;         // [m]
  double L_z = 1.4e-6;             // [m]
  double mass = 1.443160648e-25;   // 87Rb [kg]
  double a_sc = 5e-9;              // [m]
  double atom_number = 1.0;

  void validate() const;
  bool operator==(const TrapSpec&) const = default;
};

inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kRb87Mass = 86.909180527 * 1.66053906660e-27;

// kappa = pi hbar a N / (m (2 pi)^{3/2} L_perp^2 L_z)
double kappa_from_trap(const TrapSpec& trap);

// Atom number that makes kappa_from_trap(trap) equal `kappa`.
double atom_number_for_kappa(const TrapSpec& trap, double kappa);

CondensateAmplitudes rhs(const CondensateAmplitudes& state, const PhysicalParams& params,
                         double delta);

// |alpha|^2 - |beta+|^2 - |beta-|^2
double transfer_function(const CondensateAmplitudes& state);

struct Trajectory {
  std::vector<double> times;
  std::vector<CondensateAmplitudes> states;
  PhysicalParams params;
  DetuningSchedule schedule;
  double tol = 0.0;
  ode::Dop853Stats stats;

  std::vector<double> transfer_series() const;
  double min_transfer() const;
  double max_norm_drift() const;
};

inline constexpr double kMinTolerance = 1e-13;
inline constexpr double kMaxTolerance = 1e-6;

// Adaptive integration with dense output at `sample_times` (strictly increasing,
// first entry 0, last entry the end time). tol is used as both relative and
// absolute tolerance and must lie in [1e-13, 1e-6].
Trajectory integrate(const CondensateAmplitudes& initial, const PhysicalParams& params,
                     const DetuningSchedule& schedule, std::span<const double> sample_times,
                     double tol = 1e-10);

// Convenience overload: `samples` equally spaced times on [0, t_end].
Trajectory integrate(const CondensateAmplitudes& initial, const PhysicalParams& params,
                     const DetuningSchedule& schedule, double t_end, double tol = 1e-10,
                     int samples = 2001);

std::vector<double> uniform_times(double t_end, int samples);

struct SteadyStateRatio {
  double plus = 0.0;   // normalised so plus + minus = 1
  double minus = 0.0;
  double mean_population_plus = 0.0;
  double mean_population_minus = 0.0;
  // Peak-to-peak spread of |beta+|^2 / (|beta+|^2 + |beta-|^2) in the tail.
  double tail_oscillation = 0.0;
};

// Arithmetic mean of |beta+-|^2 over samples with t >= t_end - tail_fraction
// * span. Throws std::domain_error when both means fall below 1e-12.
SteadyStateRatio steady_state_ratio(const Trajectory& traj, double tail_fraction = 0.2);

// CSV export: header comment lines, then one row per sample with columns
// t, Re/Im of alpha, beta+, beta-, the three populations, f and delta.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::pair<std::string, std::string>>& header);

}  // namespace vortex
