#include "vortex/condensate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "vortex/errors.hpp"
#include "vortex/grid.hpp"

namespace vortex {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_rate(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0)
    throw ConfigError(std::string(name) + " must be finite and non-negative");
}

using PackedState = std::array<double, 6>;

PackedState pack(const CondensateAmplitudes& s) {
  return {s.alpha.real(), s.alpha.imag(), s.beta_plus.real(), s.beta_plus.imag(),
          s.beta_minus.real(), s.beta_minus.imag()};
}

CondensateAmplitudes unpack(const PackedState& y) {
  return {{y[0], y[1]}, {y[2], y[3]}, {y[4], y[5]}};
}

}  // namespace

void PhysicalParams::validate() const {
  require_rate(omega_perp, "omega_perp");
  require_rate(kappa, "kappa");
  require_rate(coupling, "coupling");
  const double amp = std::norm(a_plus) + std::norm(a_minus);
  if (!(std::abs(amp - 1.0) <= 1e-12))
    throw ConfigError("superposition amplitudes must satisfy |a+|^2 + |a-|^2 = 1 (got " +
                      std::to_string(amp) + ")");
  if (ell != kProjectedCharge)
    throw ConfigError("projected dynamics are defined for vortex charge 2 only");
}

PhysicalParams PhysicalParams::scaled(double factor) const {
  PhysicalParams out = *this;
  out.omega_perp *= factor;
  out.kappa *= factor;
  out.coupling *= factor;
  return out;
}

DetuningSchedule DetuningSchedule::scaled(double factor) const {
  return {kind, delta0 * factor, slope * factor};
}

std::string to_string(DetuningSchedule::Kind kind) {
  return kind == DetuningSchedule::Kind::linear ? "linear" : "constant";
}

void TrapSpec::validate() const {
  for (double v : {omega_perp, omega_z, L_perp, L_z, mass, atom_number})
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("trap parameters must be positive");
  if (!(a_sc >= 0.0)) throw ConfigError("scattering length must be non-negative");
}

double kappa_from_trap(const TrapSpec& trap) {
  trap.validate();
  const double two_pi_32 = std::pow(2.0 * std::numbers::pi, 1.5);
  return std::numbers::pi * kHbar * trap.a_sc * trap.atom_number /
         (trap.mass * two_pi_32 * trap.L_perp * trap.L_perp * trap.L_z);
}

double atom_number_for_kappa(const TrapSpec& trap, double kappa) {
  TrapSpec unit = trap;
  unit.atom_number = 1.0;
  const double per_atom = kappa_from_trap(unit);
  if (!(per_atom > 0.0)) throw ConfigError("kappa per atom vanishes; cannot back out N");
  return kappa / per_atom;
}

CondensateAmplitudes rhs(const CondensateAmplitudes& s, const PhysicalParams& p, double delta) {
  const double vortex_pop = std::norm(s.beta_plus) + std::norm(s.beta_minus);
  const double vortex_shift = delta + 2.0 * p.omega_perp + 0.5 * p.kappa * vortex_pop;
  const cplx alpha_term = 3.0 * p.kappa * std::norm(s.alpha) * s.alpha +
                          p.coupling * (std::conj(p.a_plus) * s.beta_plus +
                                        std::conj(p.a_minus) * s.beta_minus);
  const cplx plus_term = vortex_shift * s.beta_plus + p.coupling * p.a_plus * s.alpha;
  const cplx minus_term = vortex_shift * s.beta_minus + p.coupling * p.a_minus * s.alpha;
  return {-kI * alpha_term, -kI * plus_term, -kI * minus_term};
}

double transfer_function(const CondensateAmplitudes& s) {
  return s.population_alpha() - s.population_plus() - s.population_minus();
}

std::vector<double> Trajectory::transfer_series() const {
  std::vector<double> f(states.size());
  std::transform(states.begin(), states.end(), f.begin(), transfer_function);
  return f;
}

double Trajectory::min_transfer() const {
  const auto f = transfer_series();
  return f.empty() ? 0.0 : *std::min_element(f.begin(), f.end());
}

double Trajectory::max_norm_drift() const {
  if (states.empty()) return 0.0;
  const double n0 = states.front().norm2();
  double worst = 0.0;
  for (const auto& s : states) worst = std::max(worst, std::abs(s.norm2() - n0));
  return worst;
}

std::vector<double> uniform_times(double t_end, int samples) {
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (samples < 2) throw ConfigError("at least two samples are required");
  std::vector<double> times(samples);
  for (int k = 0; k < samples; ++k) times[k] = t_end * k / (samples - 1);
  times.back() = t_end;
  return times;
}

namespace {
constexpr double kMaxPhasePerStep = 0.3;
}

Trajectory integrate(const CondensateAmplitudes& initial, const PhysicalParams& params,
                     const DetuningSchedule& schedule, std::span<const double> sample_times,
                     double tol) {
  if (!(tol >= kMinTolerance && tol <= kMaxTolerance))
    throw ConfigError("tolerance must lie in [1e-13, 1e-6]");
  if (sample_times.size() < 2 || sample_times.front() != 0.0 || !(sample_times.back() > 0.0))
    throw ConfigError("sample times must start at 0 and end at a positive time");
  if (std::adjacent_find(sample_times.begin(), sample_times.end(), std::greater_equal<>()) !=
      sample_times.end())
    throw ConfigError("sample times must be strictly increasing");
  params.validate();

  Trajectory traj;
  traj.params = params;
  traj.schedule = schedule;
  traj.tol = tol;
  traj.times.assign(sample_times.begin(), sample_times.end());
  traj.states.resize(sample_times.size());

  // The local error test alone lets long steps through on these oscillatory
  // problems and the phase error then accumulates far above tol, so each
  // step is also capped to a fixed phase advance at the fastest rate.
  const double t_end = sample_times.back();
  const double n2 = initial.norm2();
  const double fastest = std::max(std::abs(schedule(0.0)), std::abs(schedule(t_end))) +
                         2.0 * params.omega_perp + 3.5 * params.kappa * n2 +
                         params.coupling * (std::abs(params.a_plus) + std::abs(params.a_minus));
  ode::Dop853Options options{.rtol = tol, .atol = tol};
  if (fastest > 0.0) options.max_step = kMaxPhasePerStep / fastest;
  ode::Dop853<6> solver(options);
  traj.stats = solver.solve(
      [&](double t, const PackedState& y, PackedState& dy) {
        dy = pack(rhs(unpack(y), params, schedule(t)));
      },
      0.0, pack(initial), sample_times,
      [&](std::size_t index, double, const PackedState& y) { traj.states[index] = unpack(y); });
  return traj;
}

Trajectory integrate(const CondensateAmplitudes& initial, const PhysicalParams& params,
                     const DetuningSchedule& schedule, double t_end, double tol, int samples) {
  const auto times = uniform_times(t_end, samples);
  return integrate(initial, params, schedule, times, tol);
}

SteadyStateRatio steady_state_ratio(const Trajectory& traj, double tail_fraction) {
  if (traj.times.empty()) throw ConfigError("steady_state_ratio needs a non-empty trajectory");
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
    throw ConfigError("tail fraction must lie in (0, 1)");
  const double t0 = traj.times.front();
  const double t1 = traj.times.back();
  const double start = t1 - tail_fraction * (t1 - t0);

  double sum_plus = 0.0, sum_minus = 0.0;
  double lo = 1.0, hi = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.times[k] < start) continue;
    const double pp = traj.states[k].population_plus();
    const double pm = traj.states[k].population_minus();
    sum_plus += pp;
    sum_minus += pm;
    if (pp + pm > 0.0) {
      lo = std::min(lo, pp / (pp + pm));
      hi = std::max(hi, pp / (pp + pm));
    }
    ++count;
  }
  SteadyStateRatio out;
  out.mean_population_plus = sum_plus / count;
  out.mean_population_minus = sum_minus / count;
  if (out.mean_population_plus < 1e-12 && out.mean_population_minus < 1e-12)
    throw std::domain_error("vortex populations vanish in the tail; ratio undefined");
  const double total = out.mean_population_plus + out.mean_population_minus;
  out.plus = out.mean_population_plus / total;
  out.minus = out.mean_population_minus / total;
  out.tail_oscillation = hi >= lo ? hi - lo : 0.0;
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::pair<std::string, std::string>>& header) {
  for (const auto& [key, value] : header) os << "# " << key << " = " << value << '\n';
  os << "t,re_alpha,im_alpha,re_beta_plus,im_beta_plus,re_beta_minus,im_beta_minus,"
        "pop_alpha,pop_beta_plus,pop_beta_minus,f,delta\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& s = traj.states[k];
    const double t = traj.times[k];
    for (double v : {t, s.alpha.real(), s.alpha.imag(), s.beta_plus.real(), s.beta_plus.imag(),
                     s.beta_minus.real(), s.beta_minus.imag(), s.population_alpha(),
                     s.population_plus(), s.population_minus(), transfer_function(s)})
      os << format_number(v) << ',';
    os << format_number(traj.schedule(t)) << '\n';
  }
}

}  // namespace vortex
