#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vortex/errors.hpp"
#include "vortex/oam_modes.hpp"

using namespace vortex;

namespace {

constexpr double kPi = std::numbers::pi;

// Three-term recurrence, independent of the explicit sum in the library.
double laguerre_recurrence(int p, int a, double x) {
  double prev = 1.0;
  if (p == 0) return prev;
  double cur = 1.0 + a - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// Binomial (a + p choose p) by Pascal's triangle in integers.
long long binomial(int n, int k) {
  std::vector<long long> row(n + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j > 0; --j) row[j] += row[j - 1];
  return row[k];
}

}  // namespace

TEST_SUITE("oam_modes") {

TEST_CASE("laguerre examples") {
  CHECK(assoc_laguerre(0, 2, 7.3) == 1.0);
  CHECK(assoc_laguerre(1, 0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(assoc_laguerre(2, 1, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("laguerre at zero is the binomial coefficient") {
  for (int p = 0; p <= 6; ++p)
    for (int a = 0; a <= 6; ++a)
      CHECK(assoc_laguerre(p, a, 0.0) == static_cast<double>(binomial(a + p, p)));
}

TEST_CASE("laguerre agrees with the three-term recurrence") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int p = gen.integer(0, 8);
    const int a = gen.integer(0, 8);
    const double x = gen.uniform(0.0, 12.0);
    const double ref = laguerre_recurrence(p, a, x);
    CHECK(assoc_laguerre(p, a, x) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("exact factorials") {
  CHECK(exact_factorial(0) == 1u);
  CHECK(exact_factorial(10) == 3628800u);
  CHECK(exact_factorial(20) == 2432902008176640000ull);
  CHECK_THROWS_AS(exact_factorial(21), ConfigError);
  CHECK_THROWS_AS(exact_factorial(-1), ConfigError);
}

TEST_CASE("mode parameter validation") {
  CHECK_THROWS_AS((LgModeSpec{-1, 2, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((LgModeSpec{0, 2, 0.0}.validate()), ConfigError);
  CHECK_THROWS_AS((LgModeSpec{10, -11, 1.0}.validate()), ConfigError);
  CHECK_NOTHROW((LgModeSpec{10, -10, 1.0}.validate()));
}

TEST_CASE("angles wrap into [0, 2 pi)") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(2.0 * kPi) == 0.0);
  CHECK(wrap_angle(-0.25) == doctest::Approx(2.0 * kPi - 0.25));
  const auto pt = CylindricalPoint::from_cartesian(-1.0, -1e-12);
  CHECK(pt.phi >= 0.0);
  CHECK(pt.phi < 2.0 * kPi);
  CHECK(CylindricalPoint::from_cartesian(0.0, 2.0).phi == doctest::Approx(kPi / 2));
  CHECK(CylindricalPoint::from_cartesian(3.0, 4.0).rho == doctest::Approx(5.0));
}

TEST_CASE("lg amplitude vanishes on axis and carries exp(i ell phi)") {
  const LgModeSpec spec{0, 2, 1e-3};
  CHECK(std::abs(lg_amplitude(spec, {0.0, 0.3, 0.0})) == 0.0);
  const cplx a0 = lg_amplitude(spec, {5e-4, 0.0, 0.0});
  const cplx a1 = lg_amplitude(spec, {5e-4, kPi / 4, 0.0});
  CHECK(std::arg(a1) - std::arg(a0) == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("lg amplitude matches the closed form for p = 0") {
  // |LG_0^ell|^2 = 2 / (pi w^2 |ell|!) (2 rho^2 / w^2)^|ell| exp(-2 rho^2 / w^2)
  oracle::Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int ell = gen.integer(-6, 6);
    const double w = gen.uniform(0.1, 3.0);
    const double rho = gen.uniform(0.0, 3.0 * w);
    const double s = 2.0 * rho * rho / (w * w);
    const double ref = 2.0 / (kPi * w * w * static_cast<double>(exact_factorial(std::abs(ell)))) *
                       std::pow(s, std::abs(ell)) * std::exp(-s);
    const double got = std::norm(lg_amplitude({0, ell, w}, {rho, gen.uniform(0, 6.28), 0.0}));
    CHECK(got == doctest::Approx(ref).epsilon(1e-12).scale(1.0 / (w * w)));
  }
}

TEST_CASE("conjugation symmetry at random points") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = gen.integer(0, 3);
    const int ell = gen.integer(1, 6);
    const double w = gen.uniform(0.5, 2.0);
    const CylindricalPoint pt{gen.uniform(0.0, 3.0 * w), gen.uniform(0.0, 2.0 * kPi), 0.0};
    const cplx plus = lg_amplitude({p, ell, w}, pt);
    const cplx minus = lg_amplitude({p, -ell, w}, pt);
    CHECK(std::abs(minus - std::conj(plus)) <= 1e-14 * (1.0 + std::abs(plus)));
  }
}

TEST_CASE("normalisation against a Simpson oracle") {
  // |LG|^2 is independent of phi, so the plane integral is 2 pi times a radial integral.
  for (auto [p, ell] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    const LgModeSpec spec{p, ell, 2e-3};
    const double radial = oracle::simpson(
        [&](double rho) { return std::norm(lg_amplitude(spec, {rho, 0.7, 0.0})) * rho; }, 0.0,
        10.0 * spec.w0, 4000);
    CHECK(2.0 * kPi * radial == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("library quadrature normalises every mode up to (2, 4)") {
  for (int p = 0; p <= 2; ++p)
    for (int ell = -4; ell <= 4; ++ell)
      CHECK(std::abs(lg_norm({p, ell, 1.5e-3}) - 1.0) <= 1e-6);
}

TEST_CASE("sampled grids") {
  SUBCASE("gaussian peaks at the centre cell") {
    const auto g = sample_mode_grid({0, 0, 1.0}, 3.0, 33);
    std::size_t best = 0;
    for (std::size_t k = 0; k < g.cells.size(); ++k)
      if (std::abs(g.cells[k]) > std::abs(g.cells[best])) best = k;
    CHECK(best == static_cast<std::size_t>(16 * 33 + 16));
  }
  SUBCASE("row-major layout, rows along y") {
    const LgModeSpec spec{1, 3, 1.0};
    const auto g = sample_mode_grid(spec, 2.0, 9);
    for (int row = 0; row < 9; ++row)
      for (int col = 0; col < 9; ++col) {
        const auto pt = CylindricalPoint::from_cartesian(g.coord(col), g.coord(row));
        CHECK(g.at(row, col) == lg_amplitude(spec, pt));
      }
  }
  SUBCASE("phase winds 2 pi ell around the centre") {
    const auto g = sample_mode_grid({0, 2, 1.0}, 2.5, 201);
    const double wind = loop_winding_phase(sample_ring(g, 1.0, 720));
    CHECK(std::abs(wind - 4.0 * kPi) <= 1e-6);
    const auto h = sample_mode_grid({0, -3, 1.0}, 2.5, 201);
    CHECK(std::abs(loop_winding_phase(sample_ring(h, 1.2, 720)) + 6.0 * kPi) <= 1e-6);
  }
  SUBCASE("opposite charge gives the conjugate grid") {
    const auto a = sample_mode_grid({1, 2, 1.0}, 2.0, 40);
    const auto b = sample_mode_grid({1, -2, 1.0}, 2.0, 40);
    for (std::size_t k = 0; k < a.cells.size(); ++k)
      CHECK(std::abs(b.cells[k] - std::conj(a.cells[k])) <= 1e-15);
  }
  SUBCASE("bad grid parameters") {
    CHECK_THROWS_AS(sample_mode_grid({0, 1, 1.0}, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(sample_mode_grid({0, 1, 1.0}, 0.0, 10), ConfigError);
    CHECK_THROWS_AS(sample_mode_grid({0, 1, 1.0}, -1.0, 10), ConfigError);
  }
}

TEST_CASE("serial and parallel grids are bit-identical") {
  const auto a = sample_mode_grid({2, 3, 1.0}, 3.0, 97, Exec::serial);
  const auto b = sample_mode_grid({2, 3, 1.0}, 3.0, 97, Exec::parallel);
  CHECK(a.cells == b.cells);
  CHECK(lg_norm({2, 4, 1.0}, Exec::serial) == lg_norm({2, 4, 1.0}, Exec::parallel));
}

}  // TEST_SUITE
