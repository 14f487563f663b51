#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vortex/exec.hpp"

namespace vortex {

using cplx = std::complex<double>;

// Square Cartesian grid over [-half_width, +half_width]^2.
//
// Storage is row-major: cell (row, col) lives at index row * n + col, where
// the row index runs along y (from -half_width upward) and the column index
// runs along x. Cell centres sit on the endpoints, so x(0) = -half_width and
// x(n - 1) = +half_width.
struct ComplexGrid {
  int n = 0;
  double half_width = 0.0;
  std::vector<cplx> cells;

  double coord(int index) const {
    return -half_width + 2.0 * half_width * index / (n - 1);
  }
  double spacing() const { return 2.0 * half_width / (n - 1); }
  const cplx& at(int row, int col) const { return cells[static_cast<std::size_t>(row) * n + col]; }
  cplx& at(int row, int col) { return cells[static_cast<std::size_t>(row) * n + col]; }

  // Bilinear interpolation of the complex field. Points outside the grid
  // are clamped to the border.
  cplx interpolate(double x, double y) const;
};

using PlaneField = std::function<cplx(double x, double y)>;

// Evaluates `field` at every cell. Throws ConfigError when n < 2 or
// half_width <= 0.
ComplexGrid sample_grid(const PlaneField& field, double half_width, int n,
                        Exec exec = Exec::parallel);

// Values of the interpolated field on an origin-centred circle.
std::vector<cplx> sample_ring(const ComplexGrid& grid, double radius, int samples);

// Accumulated phase of a closed loop of complex samples (sum of wrapped
// successive phase differences, including the closing segment).
double loop_winding_phase(const std::vector<cplx>& loop);

// Number of strict circular local maxima of a periodic sequence. Plateaus
// narrower than `rel_tol * max` are ignored.
int count_circular_maxima(const std::vector<double>& values, double rel_tol = 1e-9);

// Text exports. `header` entries are written as "# key = value" lines.
using HeaderLines = std::vector<std::pair<std::string, std::string>>;

void write_grid_csv(std::ostream& os, const ComplexGrid& grid, const HeaderLines& header);

enum class GridQuantity { real, imag, intensity, phase };
void write_grid_matrix(std::ostream& os, const ComplexGrid& grid, GridQuantity quantity,
                       const HeaderLines& header);

// 17 significant digits, scientific notation. Used by every CSV writer.
std::string format_number(double value);

}  // namespace vortex
