#include "oracles.hpp"

#include <cmath>

namespace oracle {

Triple derivative(const Rates& p, double t, const Triple& s) {
  const cplx i{0.0, 1.0};
  const double delta = p.delta0 + p.slope * t;
  const cplx a = s[0], bp = s[1], bm = s[2];
  const double vortex_pop = std::norm(bp) + std::norm(bm);
  const double diag = delta + 2.0 * p.omega_perp + 0.5 * p.kappa * vortex_pop;
  return {-i * (3.0 * p.kappa * std::norm(a) * a +
                p.coupling * (std::conj(p.a_plus) * bp + std::conj(p.a_minus) * bm)),
          -i * (diag * bp + p.coupling * p.a_plus * a),
          -i * (diag * bm + p.coupling * p.a_minus * a)};
}

namespace {

Triple axpy(const Triple& y, double h, const Triple& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

}  // namespace

std::vector<Triple> rk4_three_mode(const Rates& rates, Triple y, double dt, long steps,
                                   long stride) {
  std::vector<Triple> out{y};
  for (long n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    const Triple k1 = derivative(rates, t, y);
    const Triple k2 = derivative(rates, t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    const Triple k3 = derivative(rates, t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    const Triple k4 = derivative(rates, t + dt, axpy(y, dt, k3));
    for (int c = 0; c < 3; ++c) y[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    if ((n + 1) % stride == 0) out.push_back(y);
  }
  return out;
}

std::vector<std::array<cplx, 2>> two_level(const Rates& p, std::array<cplx, 2> initial, double dt,
                                           long steps, long stride) {
  // Real form: alpha = u0 + i u1, beta = u2 + i u3.
  using V = std::array<double, 4>;
  const double ar = p.a_plus.real(), ai = p.a_plus.imag();
  auto f = [&](double t, const V& u) {
    const double delta = p.delta0 + p.slope * t;
    const double na = u[0] * u[0] + u[1] * u[1];
    const double nb = u[2] * u[2] + u[3] * u[3];
    const double ga = 3.0 * p.kappa * na;
    const double gb = delta + 2.0 * p.omega_perp + 0.5 * p.kappa * nb;
    // conj(a) * beta and a * alpha
    const double cbr = ar * u[2] + ai * u[3], cbi = ar * u[3] - ai * u[2];
    const double aar = ar * u[0] - ai * u[1], aai = ar * u[1] + ai * u[0];
    // d/dt z = -i w  ->  (Re, Im) += (Im w, -Re w)
    const double war = ga * u[0] + p.coupling * cbr, wai = ga * u[1] + p.coupling * cbi;
    const double wbr = gb * u[2] + p.coupling * aar, wbi = gb * u[3] + p.coupling * aai;
    return V{wai, -war, wbi, -wbr};
  };
  V u{initial[0].real(), initial[0].imag(), initial[1].real(), initial[1].imag()};
  std::vector<std::array<cplx, 2>> out{initial};
  for (long n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    V tmp;
    const V k1 = f(t, u);
    for (int c = 0; c < 4; ++c) tmp[c] = u[c] + 0.5 * dt * k1[c];
    const V k2 = f(t + 0.5 * dt, tmp);
    for (int c = 0; c < 4; ++c) tmp[c] = u[c] + 0.5 * dt * k2[c];
    const V k3 = f(t + 0.5 * dt, tmp);
    for (int c = 0; c < 4; ++c) tmp[c] = u[c] + dt * k3[c];
    const V k4 = f(t + dt, tmp);
    for (int c = 0; c < 4; ++c) u[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    if ((n + 1) % stride == 0) out.push_back({cplx{u[0], u[1]}, cplx{u[2], u[3]}});
  }
  return out;
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return sum * h / 3.0;
}

double simpson_3d(const std::function<double(double, double, double)>& f, double h,
                  int intervals) {
  if (intervals % 2) ++intervals;
  const double step = 2.0 * h / intervals;
  std::vector<double> w(intervals + 1);
  for (int k = 0; k <= intervals; ++k)
    w[k] = (k == 0 || k == intervals ? 1.0 : (k % 2 ? 4.0 : 2.0)) * step / 3.0;
  double sum = 0.0;
  for (int i = 0; i <= intervals; ++i)
    for (int j = 0; j <= intervals; ++j)
      for (int k = 0; k <= intervals; ++k)
        sum += w[i] * w[j] * w[k] * f(-h + i * step, -h + j * step, -h + k * step);
  return sum;
}

Mat4 identity4() {
  Mat4 m{};
  for (int k = 0; k < 4; ++k) m[k][k] = 1.0;
  return m;
}

Mat4 splitter4(cplx r, cplx t) {
  const cplx i{0.0, 1.0};
  Mat4 m{};
  for (int s = 0; s < 2; ++s) {  // same action on both charges
    m[s][s] = r;
    m[s][2 + s] = i * std::conj(t);
    m[2 + s][s] = i * t;
    m[2 + s][2 + s] = std::conj(r);
  }
  return m;
}

Mat4 dove4(int port) {
  Mat4 m = identity4();
  const int o = port == 1 ? 0 : 2;
  m[o][o] = m[o + 1][o + 1] = 0.0;
  m[o][o + 1] = m[o + 1][o] = 1.0;
  return m;
}

Mat4 phase4(int port, double phi) {
  Mat4 m = identity4();
  const int o = port == 1 ? 0 : 2;
  m[o][o] = m[o + 1][o + 1] = std::polar(1.0, phi);
  return m;
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) m[i][j] += a[i][k] * b[k][j];
  return m;
}

std::array<cplx, 4> apply(const Mat4& m, const std::array<cplx, 4>& v) {
  std::array<cplx, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out[i] += m[i][k] * v[k];
  return out;
}

std::pair<cplx, cplx> Gen::unitary_pair() {
  cplx r = complex_normal(), t = complex_normal();
  const double n = std::sqrt(std::norm(r) + std::norm(t));
  return {r / n, t / n};
}

Triple Gen::unit_triple() {
  Triple s{complex_normal(), complex_normal(), complex_normal()};
  const double n = std::sqrt(std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]));
  for (auto& c : s) c /= n;
  return s;
}

}  // namespace oracle
