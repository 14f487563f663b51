#include "vortex/presets.hpp"

#include <cmath>

#include "vortex/errors.hpp"

namespace vortex::presets {

PhysicalParams reference_params() {
  PhysicalParams p;
  p.omega_perp = kOmegaPerp;
  p.kappa = kKappa;
  p.coupling = kOmegaPerp;
  p.a_plus = 1.0 / std::sqrt(2.0);
  p.a_minus = 1.0 / std::sqrt(2.0);
  p.ell = kProjectedCharge;
  return p;
}

Scenario figure3(char which) {
  Scenario s;
  s.name = std::string("fig3") + which;
  s.params = reference_params();
  switch (which) {
    case 'a': s.schedule = DetuningSchedule::constant(0.0); break;
    case 'b': s.schedule = DetuningSchedule::constant(900.0); break;
    case 'c': s.schedule = DetuningSchedule::constant(380.0); break;
    case 'd': s.schedule = DetuningSchedule::linear(kSweepStart, kSweepSlope); break;
    default: throw ConfigError(std::string("unknown transfer-function case '") + which + "'");
  }
  return s;
}

Scenario figure4(double plus_fraction) {
  if (!(plus_fraction >= 0.0 && plus_fraction <= 1.0))
    throw ConfigError("superposition fraction must lie in [0, 1]");
  Scenario s;
  s.name = "fig4";
  s.params = reference_params();
  s.params.a_plus = std::sqrt(plus_fraction);
  s.params.a_minus = std::sqrt(1.0 - plus_fraction);
  s.schedule = DetuningSchedule::linear(kSweepStart, kSweepSlope);
  return s;
}

TrapSpec reference_trap() {
  TrapSpec trap;
  trap.omega_perp = kOmegaPerp;
  trap.omega_z = kOmegaPerp;
  trap.L_perp = kLPerp;
  trap.L_z = kLz;
  trap.mass = kRb87Mass;
  trap.a_sc = kScatteringLength;
  trap.atom_number = atom_number_for_kappa(trap, kKappa);
  return trap;
}

Figure3Result run_figure3(char which) {
  const Scenario s = figure3(which);
  Figure3Result out{integrate(s.initial, s.params, s.schedule, s.t_end, s.tol, s.samples), {}};
  out.transfer = out.trajectory.transfer_series();
  return out;
}

}  // namespace vortex::presets
