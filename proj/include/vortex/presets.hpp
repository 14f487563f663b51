#pragma once

// Scenario presets for the transfer-function and superposition runs. Rates
// are the printed 87Rb values used directly as ODE rates.

#include <string>

#include "vortex/condensate.hpp"

namespace vortex::presets {

inline constexpr double kOmegaPerp = 132.0;
inline constexpr double kKappa = 422.0;
inline constexpr double kSweepStart = 3000.0;        // delta(0)
inline constexpr double kSweepSlope = -400.0 * 400.0;  // "3000 - 400^2 t"
inline constexpr double kEndTime = 0.1;              // [s]
inline constexpr double kTolerance = 1e-10;
inline constexpr int kSamples = 2001;
inline constexpr double kTailFraction = 0.2;

inline constexpr double kLPerp = 2.35e-6;  // [m]
inline constexpr double kLz = 1.4e-6;      // [m]
inline constexpr double kScatteringLength = 5e-9;  // [m]

struct Scenario {
  std::string name;
  PhysicalParams params;
  DetuningSchedule schedule;
  CondensateAmplitudes initial;
  double t_end = kEndTime;
  double tol = kTolerance;
  int samples = kSamples;
};

// Balanced superposition at the reference trap rates.
PhysicalParams reference_params();

// Cases 'a' (delta = 0), 'b' (900), 'c' (380) and 'd' (linear sweep).
// Throws ConfigError for any other letter.
Scenario figure3(char which);

// Linear sweep with |a+|^2 = plus_fraction, real non-negative amplitudes.
Scenario figure4(double plus_fraction);

// Reference trap sizes and scattering length; atom number set so
// that kappa_from_trap returns kKappa.
TrapSpec reference_trap();

struct Figure3Result {
  Trajectory trajectory;
  std::vector<double> transfer;
};

Figure3Result run_figure3(char which);

}  // namespace vortex::presets
