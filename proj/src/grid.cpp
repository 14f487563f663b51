#include "vortex/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "vortex/errors.hpp"

namespace vortex {

cplx ComplexGrid::interpolate(double x, double y) const {
  const double h = spacing();
  const double fx = std::clamp((x + half_width) / h, 0.0, static_cast<double>(n - 1));
  const double fy = std::clamp((y + half_width) / h, 0.0, static_cast<double>(n - 1));
  const int c0 = std::min(static_cast<int>(fx), n - 2);
  const int r0 = std::min(static_cast<int>(fy), n - 2);
  const double tx = fx - c0;
  const double ty = fy - r0;
  return (1 - ty) * ((1 - tx) * at(r0, c0) + tx * at(r0, c0 + 1)) +
         ty * ((1 - tx) * at(r0 + 1, c0) + tx * at(r0 + 1, c0 + 1));
}

ComplexGrid sample_grid(const PlaneField& field, double half_width, int n, Exec exec) {
  if (n < 2) throw ConfigError("grid size must be at least 2, got " + std::to_string(n));
  if (!(half_width > 0.0)) throw ConfigError("grid half-width must be positive");

  ComplexGrid grid{n, half_width, std::vector<cplx>(static_cast<std::size_t>(n) * n)};
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int row = 0; row < n; ++row) {
      const double y = grid.coord(row);
      for (int col = 0; col < n; ++col) grid.at(row, col) = field(grid.coord(col), y);
    }
  } else {
    for (int row = 0; row < n; ++row) {
      const double y = grid.coord(row);
      for (int col = 0; col < n; ++col) grid.at(row, col) = field(grid.coord(col), y);
    }
  }
  return grid;
}

std::vector<cplx> sample_ring(const ComplexGrid& grid, double radius, int samples) {
  std::vector<cplx> ring(samples);
  for (int k = 0; k < samples; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / samples;
    ring[k] = grid.interpolate(radius * std::cos(phi), radius * std::sin(phi));
  }
  return ring;
}

double loop_winding_phase(const std::vector<cplx>& loop) {
  double total = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const cplx& a = loop[k];
    const cplx& b = loop[(k + 1) % loop.size()];
    total += std::arg(b * std::conj(a));
  }
  return total;
}

int count_circular_maxima(const std::vector<double>& values, double rel_tol) {
  const auto n = values.size();
  if (n < 3) return 0;
  const double peak = *std::max_element(values.begin(), values.end());
  const double eps = rel_tol * std::abs(peak);
  int count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = values[(k + n - 1) % n];
    const double next = values[(k + 1) % n];
    if (values[k] > prev + eps && values[k] + eps >= next) ++count;
  }
  return count;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

namespace {

void write_header(std::ostream& os, const HeaderLines& header) {
  for (const auto& [key, value] : header) os << "# " << key << " = " << value << '\n';
}

double quantity_of(const cplx& v, GridQuantity q) {
  switch (q) {
    case GridQuantity::real: return v.real();
    case GridQuantity::imag: return v.imag();
    case GridQuantity::intensity: return std::norm(v);
    case GridQuantity::phase: return std::arg(v);
  }
  return 0.0;
}

}  // namespace

void write_grid_csv(std::ostream& os, const ComplexGrid& grid, const HeaderLines& header) {
  write_header(os, header);
  os << "x,y,re,im,intensity,phase\n";
  for (int row = 0; row < grid.n; ++row) {
    for (int col = 0; col < grid.n; ++col) {
      const cplx& v = grid.at(row, col);
      os << format_number(grid.coord(col)) << ',' << format_number(grid.coord(row)) << ','
         << format_number(v.real()) << ',' << format_number(v.imag()) << ','
         << format_number(std::norm(v)) << ',' << format_number(std::arg(v)) << '\n';
    }
  }
}

void write_grid_matrix(std::ostream& os, const ComplexGrid& grid, GridQuantity quantity,
                       const HeaderLines& header) {
  write_header(os, header);
  for (int row = 0; row < grid.n; ++row) {
    for (int col = 0; col < grid.n; ++col) {
      if (col) os << ' ';
      os << format_number(quantity_of(grid.at(row, col), quantity));
    }
    os << '\n';
  }
}

}  // namespace vortex
