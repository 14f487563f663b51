#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "vortex/exec.hpp"

namespace vortex::quad {

inline constexpr int kMaxHermiteOrder = 256;

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  // Gauss-Hermite only: weights[k] * exp(nodes[k]^2), computed without
  // overflow for large orders.
  std::vector<double> scaled_weights;
};

// Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int order);

// Gauss-Hermite rule for weight exp(-x^2) on the real line.
Rule gauss_hermite(int order);

// Composite Gauss-Legendre on [a, b] with `panels` equal sub-intervals.
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          int panels, int order);

// Tensor-product Gauss-Hermite over R^3 with per-axis length scales.
//
// The integrand is the full function (Gaussian factor included); each axis
// uses x = scale * xi and the exp(-xi^2) weight is divided back out. The
// rule is exact when f is a polynomial of degree < 2 * order times
// exp(-(x/sx)^2 - (y/sy)^2 - (z/sz)^2).
//
// Partial sums are formed per outer node and reduced serially in index
// order, so both execution variants return bit-identical results.
struct Scales3 {
  double x, y, z;
};

using Integrand3 = std::function<std::complex<double>(double x, double y, double z)>;

std::complex<double> hermite_3d(const Integrand3& f, Scales3 scales, int order,
                                Exec exec = Exec::parallel);

// Polar quadrature in the plane: Gauss-Legendre panels in rho over
// [0, rho_max] and the periodic trapezoid rule in phi.
struct PolarGrid {
  double rho_max;
  int radial_panels;
  int radial_order;
  int angular_points;
};

using Integrand2 = std::function<double(double rho, double phi)>;

// Returns the integral of f(rho, phi) * rho drho dphi.
double polar_2d(const Integrand2& f, const PolarGrid& grid, Exec exec = Exec::parallel);

}  // namespace vortex::quad
