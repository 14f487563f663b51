#include "vortex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vortex/errors.hpp"

namespace vortex::quad {

namespace {

constexpr int kNewtonIterations = 100;

// Number of eigenvalues below x of the Hermite Jacobi matrix (zero diagonal,
// off-diagonal sqrt(j / 2)), by Sturm sequence.
int hermite_roots_below(double x, int order) {
  int count = 0;
  double q = -x;
  if (q < 0.0) ++count;
  for (int j = 1; j < order; ++j) {
    if (q == 0.0) q = 1e-300;
    q = -x - 0.5 * j / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// k-th smallest root of H_order, by bisection.
double hermite_root(int k, int order) {
  double lo = -std::sqrt(2.0 * order + 2.0), hi = -lo;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hermite_roots_below(mid, order) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Rule gauss_legendre(int order) {
  if (order < 1) throw ConfigError("Gauss-Legendre order must be >= 1");
  Rule rule{std::vector<double>(order), std::vector<double>(order), {}};
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < kNewtonIterations; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

Rule gauss_hermite(int order) {
  if (order < 1 || order > kMaxHermiteOrder)
    throw ConfigError("Gauss-Hermite order must be in [1, " + std::to_string(kMaxHermiteOrder) + "]");
  // Roots bracketed by bisection on the Jacobi matrix, then polished by
  // Newton on the orthonormal Hermite recurrence.
  Rule rule{std::vector<double>(order), std::vector<double>(order), std::vector<double>(order)};
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = hermite_root(order - 1 - i, order);
    double pp = 0.0;
    for (int it = 0; it < kNewtonIterations; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * order) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 3e-15 * std::max(1.0, std::abs(z))) break;
    }
    double p1 = pim4, p2 = 0.0;
    for (int j = 1; j <= order; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    }
    pp = std::sqrt(2.0 * order) * p2;
    const double damped = std::exp(0.5 * z * z) / pp;
    rule.nodes[i] = z;
    rule.nodes[order - 1 - i] = -z;
    rule.weights[i] = 2.0 / (pp * pp);
    rule.weights[order - 1 - i] = rule.weights[i];
    rule.scaled_weights[i] = 2.0 * damped * damped;
    rule.scaled_weights[order - 1 - i] = rule.scaled_weights[i];
  }
  // Ascending order.
  Rule sorted{std::vector<double>(order), std::vector<double>(order), std::vector<double>(order)};
  for (int k = 0; k < order; ++k) {
    sorted.nodes[k] = rule.nodes[order - 1 - k];
    sorted.weights[k] = rule.weights[order - 1 - k];
    sorted.scaled_weights[k] = rule.scaled_weights[order - 1 - k];
  }
  return sorted;
}

double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          int panels, int order) {
  const Rule rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    double panel = 0.0;
    for (int k = 0; k < order; ++k) panel += rule.weights[k] * f(mid + 0.5 * width * rule.nodes[k]);
    total += 0.5 * width * panel;
  }
  return total;
}

std::complex<double> hermite_3d(const Integrand3& f, Scales3 scales, int order, Exec exec) {
  const Rule rule = gauss_hermite(order);
  // Weights with the exp(-xi^2) factor divided out, times the axis scale.
  std::vector<double> wx(order), wy(order), wz(order);
  std::vector<double> x(order), y(order), z(order);
  for (int k = 0; k < order; ++k) {
    const double xi = rule.nodes[k];
    const double w = rule.scaled_weights[k];
    x[k] = scales.x * xi;
    y[k] = scales.y * xi;
    z[k] = scales.z * xi;
    wx[k] = w * scales.x;
    wy[k] = w * scales.y;
    wz[k] = w * scales.z;
  }

  std::vector<std::complex<double>> partial(order);
  auto slab = [&](int i) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < order; ++j) {
      std::complex<double> line = 0.0;
      for (int k = 0; k < order; ++k) line += wz[k] * f(x[i], y[j], z[k]);
      acc += wy[j] * line;
    }
    partial[i] = wx[i] * acc;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < order; ++i) slab(i);
  } else {
    for (int i = 0; i < order; ++i) slab(i);
  }

  std::complex<double> total = 0.0;
  for (const auto& p : partial) total += p;
  return total;
}

double polar_2d(const Integrand2& f, const PolarGrid& grid, Exec exec) {
  const Rule rule = gauss_legendre(grid.radial_order);
  const int n_rho = grid.radial_panels * grid.radial_order;
  const double width = grid.rho_max / grid.radial_panels;
  const double dphi = 2.0 * std::numbers::pi / grid.angular_points;

  std::vector<double> partial(n_rho);
  auto ring = [&](int idx) {
    const int panel = idx / grid.radial_order;
    const int k = idx % grid.radial_order;
    const double rho = (panel + 0.5) * width + 0.5 * width * rule.nodes[k];
    const double w = 0.5 * width * rule.weights[k];
    double acc = 0.0;
    for (int m = 0; m < grid.angular_points; ++m) acc += f(rho, m * dphi);
    partial[idx] = w * rho * acc * dphi;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < n_rho; ++idx) ring(idx);
  } else {
    for (int idx = 0; idx < n_rho; ++idx) ring(idx);
  }

  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace vortex::quad
