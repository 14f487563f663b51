#include "vortex/oam_modes.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "vortex/errors.hpp"
#include "vortex/quadrature.hpp"

namespace vortex {

void LgModeSpec::validate() const {
  if (p < 0) throw ConfigError("LG radial index p must be >= 0");
  if (!(w0 > 0.0)) throw ConfigError("LG beam waist must be positive");
  if (p + std::abs(ell) > kMaxModeOrder)
    throw ConfigError("LG mode order p + |ell| exceeds " + std::to_string(kMaxModeOrder));
}

double wrap_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(phi, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  // fmod of a tiny negative angle can round up to exactly 2 pi.
  if (wrapped >= two_pi) wrapped = 0.0;
  return wrapped;
}

CylindricalPoint CylindricalPoint::from_cartesian(double x, double y, double z) {
  return {std::hypot(x, y), wrap_angle(std::atan2(y, x)), z};
}

std::uint64_t exact_factorial(int n) {
  if (n < 0 || n > kMaxModeOrder)
    throw ConfigError("factorial argument out of exact range: " + std::to_string(n));
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

namespace {

// C(n, k) exactly; n <= kMaxModeOrder.
std::uint64_t binomial(int n, int k) {
  return exact_factorial(n) / (exact_factorial(k) * exact_factorial(n - k));
}

}  // namespace

double assoc_laguerre(int p, int ell_abs, double x) {
  if (p < 0 || ell_abs < 0) throw ConfigError("assoc_laguerre requires p, |ell| >= 0");
  // (a+p)! / ((p-m)! (a+m)! m!) = C(a+p, p-m) / m!
  double sum = 0.0;
  double power = 1.0;
  for (int m = 0; m <= p; ++m) {
    const double coeff = static_cast<double>(binomial(ell_abs + p, p - m)) /
                         static_cast<double>(exact_factorial(m));
    sum += ((m % 2) ? -coeff : coeff) * power;
    power *= x;
  }
  return sum;
}

std::complex<double> lg_amplitude(const LgModeSpec& spec, const CylindricalPoint& point) {
  const int a = std::abs(spec.ell);
  const double norm = std::sqrt(2.0 * static_cast<double>(exact_factorial(spec.p)) /
                                (std::numbers::pi * static_cast<double>(exact_factorial(a + spec.p)))) /
                      spec.w0;
  const double s = std::sqrt(2.0) * point.rho / spec.w0;
  const double r2 = point.rho * point.rho / (spec.w0 * spec.w0);
  const double radial = norm * std::pow(s, a) * assoc_laguerre(spec.p, a, 2.0 * r2) * std::exp(-r2);
  const double phase = spec.ell * point.phi;
  return {radial * std::cos(phase), radial * std::sin(phase)};
}

ComplexGrid sample_mode_grid(const LgModeSpec& spec, double half_width, int n, Exec exec) {
  spec.validate();
  return sample_grid(
      [&spec](double x, double y) {
        return lg_amplitude(spec, CylindricalPoint::from_cartesian(x, y));
      },
      half_width, n, exec);
}

double lg_norm(const LgModeSpec& spec, Exec exec) {
  spec.validate();
  const quad::PolarGrid grid{8.0 * spec.w0, 32, 16, 64};
  return quad::polar_2d(
      [&spec](double rho, double phi) { return std::norm(lg_amplitude(spec, {rho, phi, 0.0})); },
      grid, exec);
}

}  // namespace vortex
