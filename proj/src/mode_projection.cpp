#include "vortex/mode_projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vortex/errors.hpp"
#include "vortex/oam_modes.hpp"
#include "vortex/quadrature.hpp"

namespace vortex {

namespace {

using cplx = std::complex<double>;
using ModeFn = std::function<cplx(const Vec3&)>;

double sign_of(Handedness h) { return h == Handedness::plus ? 1.0 : -1.0; }

// (x +- i y)^n
cplx winding_power(const Vec3& r, Handedness h, int n) {
  const cplx base{r.x, sign_of(h) * r.y};
  cplx out = 1.0;
  for (int k = 0; k < n; ++k) out *= base;
  return out;
}

double vortex_prefactor(const CondensateModeSpec& spec) {
  return 1.0 / (std::sqrt(static_cast<double>(exact_factorial(spec.ell))) *
                std::pow(spec.L_perp, spec.ell));
}

struct Gradient {
  cplx dx, dy, dz;
};

Gradient grad_psi_g(const Vec3& r, const CondensateModeSpec& spec) {
  const double g = psi_g(r, spec);
  const double lp2 = spec.L_perp * spec.L_perp;
  return {-r.x / lp2 * g, -r.y / lp2 * g, -r.z / (spec.L_z * spec.L_z) * g};
}

Gradient grad_psi_v(const Vec3& r, const CondensateModeSpec& spec) {
  const double g = psi_g(r, spec);
  const Gradient gg = grad_psi_g(r, spec);
  const double c = vortex_prefactor(spec);
  const cplx poly = c * winding_power(r, spec.handedness, spec.ell);
  const cplx dpoly = c * static_cast<double>(spec.ell) *
                     winding_power(r, spec.handedness, spec.ell - 1);
  const cplx i_sign{0.0, sign_of(spec.handedness)};
  return {dpoly * g + poly * gg.dx, i_sign * dpoly * g + poly * gg.dy, poly * gg.dz};
}

quad::Scales3 pair_scales(const CondensateModeSpec& spec) {
  return {spec.L_perp, spec.L_perp, spec.L_z};
}

quad::Scales3 quartic_scales(const CondensateModeSpec& spec) {
  const double s = 1.0 / std::sqrt(2.0);
  return {spec.L_perp * s, spec.L_perp * s, spec.L_z * s};
}

cplx integrate_modes(const std::function<cplx(const Vec3&)>& f, quad::Scales3 scales, int order,
                     Exec exec) {
  return quad::hermite_3d([&f](double x, double y, double z) { return f({x, y, z}); }, scales,
                          order, exec);
}

CoefficientEntry compare(std::string name, std::optional<double> printed, double recomputed,
                         double tolerance, std::string note = {}) {
  CoefficientEntry e{std::move(name), printed, recomputed, std::nullopt, 0.0, false, std::move(note)};
  if (printed) {
    const double diff = std::abs(recomputed - *printed);
    e.deviation = *printed == 0.0 ? diff : diff / std::abs(*printed);
    e.flagged = *e.deviation > tolerance;
  }
  return e;
}

}  // namespace

void CondensateModeSpec::validate() const {
  if (!(L_perp > 0.0) || !(L_z > 0.0)) throw ConfigError("condensate sizes must be positive");
  if (ell < 1 || ell > kMaxModeOrder) throw ConfigError("vortex charge must lie in [1, 20]");
}

double psi_g(const Vec3& r, const CondensateModeSpec& spec) {
  const double u = r.x * r.x + r.y * r.y;
  const double arg = u / (spec.L_perp * spec.L_perp) + r.z * r.z / (spec.L_z * spec.L_z);
  return std::exp(-0.5 * arg) /
         (std::pow(std::numbers::pi, 0.75) * spec.L_perp * std::sqrt(spec.L_z));
}

cplx psi_v(const Vec3& r, const CondensateModeSpec& spec) {
  return vortex_prefactor(spec) * winding_power(r, spec.handedness, spec.ell) * psi_g(r, spec);
}

void RabiProfileSpec::validate() const {
  const double amp = std::norm(a_plus) + std::norm(a_minus);
  if (!(std::abs(amp - 1.0) <= 1e-12))
    throw ConfigError("Rabi amplitudes must satisfy |a+|^2 + |a-|^2 = 1");
  if (!(waist > 0.0)) throw ConfigError("beam waist must be positive");
}

cplx rabi_profile(const Vec3& r, const RabiProfileSpec& spec, Branch branch, bool drop_gaussian) {
  const double rho2 = r.x * r.x + r.y * r.y;
  const double rho = std::sqrt(rho2);
  const int a = std::abs(spec.ell);
  double radial = spec.omega0 * std::pow(std::sqrt(2.0) * rho / spec.waist, a);
  if (!drop_gaussian) radial *= std::exp(-rho2 / (spec.waist * spec.waist));
  const double phi = std::atan2(r.y, r.x);
  const double sgn = branch == Branch::plus ? 1.0 : -1.0;
  const double phase = sgn * spec.ell * phi + spec.k * r.z;
  const cplx amp = branch == Branch::plus ? spec.a_plus : spec.a_minus;
  return amp * radial * cplx{std::cos(phase), std::sin(phase)};
}

PlaneField condensate_plane_field(const CondensateModeSpec& spec, cplx beta_plus, cplx beta_minus,
                                  cplx admixture) {
  spec.validate();
  const CondensateModeSpec plus = spec.with(Handedness::plus);
  const CondensateModeSpec minus = spec.with(Handedness::minus);
  return [=](double x, double y) {
    const Vec3 r{x, y, 0.0};
    return beta_plus * psi_v(r, plus) + beta_minus * psi_v(r, minus) + admixture * psi_g(r, spec);
  };
}

cplx mode_overlap(const ModeFn& a, const ModeFn& b, const CondensateModeSpec& spec, int order,
                  Exec exec) {
  return integrate_modes([&](const Vec3& r) { return std::conj(a(r)) * b(r); }, pair_scales(spec),
                         order, exec);
}

double mode_energy_rate(const CondensateModeSpec& spec, const TrapSpec& trap, bool vortex,
                        int order, Exec exec) {
  spec.validate();
  const double kinetic_scale = kHbar / (2.0 * trap.mass);
  const double potential_scale = trap.mass / (2.0 * kHbar);
  const double wp2 = trap.omega_perp * trap.omega_perp;
  const double wz2 = trap.omega_z * trap.omega_z;
  auto density_terms = [&](const Vec3& r) -> cplx {
    const Gradient g = vortex ? grad_psi_v(r, spec) : grad_psi_g(r, spec);
    const double amp2 = vortex ? std::norm(psi_v(r, spec)) : std::pow(psi_g(r, spec), 2);
    const double grad2 = std::norm(g.dx) + std::norm(g.dy) + std::norm(g.dz);
    const double v = wp2 * (r.x * r.x + r.y * r.y) + wz2 * r.z * r.z;
    return kinetic_scale * grad2 + potential_scale * v * amp2;
  };
  return integrate_modes(density_terms, pair_scales(spec), order, exec).real();
}

const CoefficientEntry& CoefficientReport::at(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw std::out_of_range("no coefficient named " + name);
}

namespace {

std::vector<CoefficientEntry> coefficient_entries(const CondensateModeSpec& spec,
                                                  const TrapSpec& trap,
                                                  const RabiProfileSpec& rabi, int order,
                                                  Exec exec) {
  const CondensateModeSpec plus = spec.with(Handedness::plus);
  const CondensateModeSpec minus = spec.with(Handedness::minus);
  const ModeFn g = [&](const Vec3& r) -> cplx { return psi_g(r, spec); };
  const ModeFn vp = [&](const Vec3& r) { return psi_v(r, plus); };
  const ModeFn vm = [&](const Vec3& r) { return psi_v(r, minus); };

  std::vector<CoefficientEntry> out;
  constexpr double kExact = 1e-6;
  constexpr double kPrinted = 1e-2;

  out.push_back(compare("norm_psi_g", 1.0, mode_overlap(g, g, spec, order, exec).real(), kExact));
  out.push_back(compare("norm_psi_v_plus", 1.0, mode_overlap(vp, vp, spec, order, exec).real(), kExact));
  out.push_back(compare("norm_psi_v_minus", 1.0, mode_overlap(vm, vm, spec, order, exec).real(), kExact));
  out.push_back(compare("overlap_g_v_plus", 0.0, std::abs(mode_overlap(g, vp, spec, order, exec)), 1e-8));
  out.push_back(compare("overlap_g_v_minus", 0.0, std::abs(mode_overlap(g, vm, spec, order, exec)), 1e-8));
  out.push_back(compare("overlap_v_plus_v_minus", 0.0, std::abs(mode_overlap(vp, vm, spec, order, exec)), 1e-8));

  // Contact interaction eta * |Psi|^2 with eta = 4 pi hbar a N / m, projected
  // onto the modes, in units of kappa.
  const double kappa = kappa_from_trap(trap);
  const double eta = 4.0 * std::numbers::pi * kHbar * trap.a_sc * trap.atom_number / trap.mass;
  auto quartic = [&](const ModeFn& a, const ModeFn& b) {
    return integrate_modes([&](const Vec3& r) -> cplx { return std::norm(a(r)) * std::norm(b(r)); },
                           quartic_scales(spec), order, exec)
        .real();
  };
  const double per_kappa = kappa > 0.0 ? eta / kappa : 0.0;
  out.push_back(compare("alpha_self_term_over_kappa", 3.0, per_kappa * quartic(g, g), kPrinted,
                        "coefficient of |alpha|^2 alpha; printed value 3 is not reproduced by the "
                        "contact-interaction overlap"));
  out.push_back(compare("vortex_self_term_over_kappa", 0.5, per_kappa * quartic(vp, vp), kPrinted,
                        "coefficient of |beta+|^2 beta+"));
  out.push_back(compare("vortex_cross_term_over_kappa", 0.5, per_kappa * quartic(vp, vm), kPrinted,
                        "coefficient of |beta-|^2 beta+"));
  out.push_back(compare("alpha_vortex_cross_term_over_kappa", 0.0, per_kappa * quartic(g, vp), kPrinted,
                        "coefficient of |beta+-|^2 alpha; absent from the printed equations"));

  const double offset = mode_energy_rate(plus, trap, true, order, exec) -
                        mode_energy_rate(spec, trap, false, order, exec);
  out.push_back(compare("vortex_energy_offset_over_omega_perp", 2.0, offset / trap.omega_perp,
                        kPrinted, "<psi_v|T+V|psi_v> - <psi_g|T+V|psi_g> in units of omega_perp"));

  // Coupling overlaps per unit a_+- Omega0.
  RabiProfileSpec unit = rabi;
  unit.a_plus = 1.0;
  unit.a_minus = 1.0;
  unit.omega0 = 1.0;
  unit.ell = spec.ell;
  const ModeFn op = [&](const Vec3& r) { return rabi_profile(r, unit, Branch::plus) * psi_g(r, spec); };
  const ModeFn om = [&](const Vec3& r) { return rabi_profile(r, unit, Branch::minus) * psi_g(r, spec); };
  const cplx cp = mode_overlap(vp, op, spec, order, exec);
  const cplx cm = mode_overlap(vm, om, spec, order, exec);
  const double flat = std::sqrt(static_cast<double>(exact_factorial(spec.ell))) *
                      std::pow(std::sqrt(2.0) * spec.L_perp / rabi.waist, spec.ell);
  out.push_back(compare("coupling_overlap_plus", std::nullopt, cp.real(), kPrinted,
                        "<psi_v+|Omega+|psi_g> / (a+ Omega0); flat-envelope limit " +
                            format_number(flat)));
  out.push_back(compare("coupling_overlap_minus", std::nullopt, cm.real(), kPrinted,
                        "<psi_v-|Omega-|psi_g> / (a- Omega0)"));
  out.push_back(compare("coupling_branch_ratio", 1.0, std::abs(cp / cm), kExact,
                        "printed equations use a common coupling omega_perp * a+-"));
  return out;
}

}  // namespace

CoefficientReport projected_coefficients(const CondensateModeSpec& spec, const TrapSpec& trap,
                                         const RabiProfileSpec& rabi, int order, Exec exec) {
  spec.validate();
  trap.validate();
  rabi.validate();
  if (order < 2 || 2 * order > quad::kMaxHermiteOrder)
    throw ConfigError("quadrature order must lie in [2, 128]");

  CoefficientReport report;
  report.order = order;
  report.entries = coefficient_entries(spec, trap, rabi, order, exec);
  // The doubled-order rerun serves as the error estimate.
  const auto fine = coefficient_entries(spec, trap, rabi, 2 * order, exec);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    auto& e = report.entries[i];
    e.error_estimate = std::abs(fine[i].recomputed - e.recomputed);
    if (e.error_estimate > kConvergenceTolerance * std::max(1.0, std::abs(e.recomputed)))
      throw NumericalError("quadrature for " + e.name + " not converged at order " +
                           std::to_string(order) + ": achieved error estimate " +
                           format_number(e.error_estimate));
  }
  return report;
}

void write_coefficient_report(std::ostream& os, const CoefficientReport& report) {
  os << "# quadrature_order = " << report.order << '\n';
  os << "name,printed,recomputed,deviation,error_estimate,order,flagged,note\n";
  for (const auto& e : report.entries) {
    os << e.name << ',' << (e.printed_value ? format_number(*e.printed_value) : "") << ','
       << format_number(e.recomputed) << ',' << (e.deviation ? format_number(*e.deviation) : "")
       << ',' << format_number(e.error_estimate) << ',' << report.order << ',' << (e.flagged ? "yes" : "no") << ",\"" << e.note << "\"\n";
  }
}

}  // namespace vortex
