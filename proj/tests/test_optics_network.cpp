#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "vortex/errors.hpp"
#include "vortex/optics_network.hpp"

using namespace vortex;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const cplx I{0.0, 1.0};

PathOamState single(int ell, cplx amp = 1.0) {
  PathOamState s;
  s.port1.amplitudes[ell] = amp;
  return s;
}

PathOamState random_state(oracle::Gen& gen) {
  PathOamState s;
  const int count = gen.integer(1, 5);
  for (int k = 0; k < count; ++k) {
    s.port1.amplitudes[gen.integer(-4, 4)] = gen.complex_normal();
    s.port2.amplitudes[gen.integer(-4, 4)] = gen.complex_normal();
  }
  const double n = std::sqrt(s.norm2());
  for (auto* port : {&s.port1, &s.port2})
    for (auto& [ell, c] : port->amplitudes) c /= n;
  return s;
}

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("optics_network") {

TEST_CASE("splitter examples") {
  const auto s = apply_beam_splitter(single(2), SplitterSpec::balanced());
  CHECK(close(s.port1.amplitude(2), kInvSqrt2));
  CHECK(close(s.port2.amplitude(2), I * kInvSqrt2));
  const auto m = apply_beam_splitter(single(3, 0.6), SplitterSpec{1.0, 0.0});
  CHECK(std::abs(m.port1.amplitude(3)) == doctest::Approx(0.6));
  CHECK(m.port2.norm2() == 0.0);
}

TEST_CASE("splitter construction and validation") {
  const auto s = SplitterSpec::from_ratio(0.8);
  CHECK(std::norm(s.t) == doctest::Approx(0.8));
  CHECK(std::norm(s.r) == doctest::Approx(0.2));
  CHECK_THROWS_AS(SplitterSpec::from_ratio(1.2), ConfigError);
  CHECK_THROWS_AS(check_unitary({0.7, 0.7}), ConfigError);
  CHECK_THROWS_AS(apply_beam_splitter(single(1), {1.0, 0.1}), ConfigError);
  CHECK_NOTHROW(check_unitary({std::polar(0.6, 1.0), std::polar(0.8, -2.0)}));
}

TEST_CASE("dove prism and phase examples") {
  CHECK(apply_dove_prism(single(2), Port::one).port1.amplitude(-2) == 1.0);
  CHECK(apply_dove_prism(single(2), Port::one).port1.amplitude(2) == 0.0);
  CHECK(apply_dove_prism(single(0, 0.3), Port::one).port1.amplitude(0) == 0.3);
  oracle::Gen gen(4);
  for (int k = 0; k < 200; ++k) {
    const auto s = random_state(gen);
    const Port p = gen.integer(0, 1) ? Port::one : Port::two;
    CHECK(apply_dove_prism(apply_dove_prism(s, p), p) == s);
    CHECK(apply_phase(s, p, 0.0) == s);
    const auto shifted = apply_phase(s, p, gen.uniform(-10, 10));
    for (int ell = -4; ell <= 4; ++ell)
      CHECK(std::abs(shifted.port(p).amplitude(ell)) ==
            doctest::Approx(std::abs(s.port(p).amplitude(ell))).epsilon(1e-15));
    CHECK(shifted.port(p == Port::one ? Port::two : Port::one) ==
          s.port(p == Port::one ? Port::two : Port::one));
  }
  CHECK(close(apply_phase(single(2), Port::one, kPi).port1.amplitude(2), -1.0, 1e-15));
}

TEST_CASE("every element conserves the two-port norm") {
  oracle::Gen gen(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = random_state(gen);
    const auto [r, t] = gen.unitary_pair();
    const double n0 = s.norm2();
    CHECK(std::abs(apply_beam_splitter(s, {r, t}).norm2() - n0) <= 1e-12);
    CHECK(std::abs(apply_dove_prism(s, Port::two).norm2() - n0) <= 1e-12);
    CHECK(std::abs(apply_phase(s, Port::one, gen.uniform(0, 7)).norm2() - n0) <= 1e-12);
    CHECK(apply_mirror(s) == s);
  }
}

TEST_CASE("Mach-Zehnder output at phi = pi") {
  const auto out = mach_zehnder(2, SplitterSpec::balanced(), kPi);
  CHECK(close(out.port1.amplitude(2), 0.5));
  CHECK(close(out.port1.amplitude(-2), 0.5));
  CHECK(close(out.port2.amplitude(-2), 0.5 * I));
  CHECK(close(out.port2.amplitude(2), -0.5 * I));

  const auto single_t = mach_zehnder(2, SplitterSpec{0.0, 1.0}, kPi);
  CHECK(close(single_t.port1.amplitude(2), kInvSqrt2));
  CHECK(std::abs(single_t.port1.amplitude(-2)) <= 1e-15);
  CHECK(close(single_t.port2.amplitude(2), -I * kInvSqrt2));
}

TEST_CASE("Mach-Zehnder against the composed 4x4 matrix") {
  oracle::Gen gen(33);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [r, t] = gen.unitary_pair();
    const double phi = gen.uniform(-kPi, 3 * kPi);
    const int ell = gen.integer(1, 6);
    using namespace oracle;
    const Mat4 m = multiply(splitter4(kInvSqrt2, kInvSqrt2),
                            multiply(phase4(2, phi), multiply(dove4(1), splitter4(r, t))));
    const auto v = apply(m, {1.0, 0.0, 0.0, 0.0});
    const auto out = mach_zehnder(ell, {r, t}, phi);
    CHECK(close(out.port1.amplitude(ell), v[0]));
    CHECK(close(out.port1.amplitude(-ell), v[1]));
    CHECK(close(out.port2.amplitude(ell), v[2]));
    CHECK(close(out.port2.amplitude(-ell), v[3]));
    CHECK(std::abs(out.norm2() - 1.0) <= 1e-12);
  }
}

TEST_CASE("generic networks compose element by element") {
  oracle::Gen gen(34);
  for (int trial = 0; trial < 200; ++trial) {
    Network net;
    oracle::Mat4 m = oracle::identity4();
    const int len = gen.integer(1, 8);
    for (int k = 0; k < len; ++k) {
      switch (gen.integer(0, 3)) {
        case 0: {
          const auto [r, t] = gen.unitary_pair();
          net.push_back(element::BeamSplitter{{r, t}});
          m = oracle::multiply(oracle::splitter4(r, t), m);
          break;
        }
        case 1: {
          const int port = gen.integer(1, 2);
          net.push_back(element::DovePrism{static_cast<Port>(port)});
          m = oracle::multiply(oracle::dove4(port), m);
          break;
        }
        case 2: {
          const int port = gen.integer(1, 2);
          const double phi = gen.uniform(0, 2 * kPi);
          net.push_back(element::PhaseShift{static_cast<Port>(port), phi});
          m = oracle::multiply(oracle::phase4(port, phi), m);
          break;
        }
        default: net.push_back(element::Mirror{});
      }
    }
    const cplx a = gen.complex_normal(), b = gen.complex_normal();
    PathOamState in;
    in.port1.amplitudes[3] = a;
    in.port2.amplitudes[-3] = b;
    const auto v = oracle::apply(m, {a, 0.0, 0.0, b});
    const auto out = apply_network(in, net);
    CHECK(close(out.port1.amplitude(3), v[0], 1e-11));
    CHECK(close(out.port1.amplitude(-3), v[1], 1e-11));
    CHECK(close(out.port2.amplitude(3), v[2], 1e-11));
    CHECK(close(out.port2.amplitude(-3), v[3], 1e-11));
  }
}

TEST_CASE("post-selected port 1 carries t|ell> + r|-ell>") {
  oracle::Gen gen(35);
  for (int trial = 0; trial < 500; ++trial) {
    const auto [r, t] = gen.unitary_pair();
    const auto port = renormalize_port(mach_zehnder(2, {r, t}, kPi), Port::one);
    CHECK(close(port.amplitude(2), t));
    CHECK(close(port.amplitude(-2), r));
    CHECK(std::abs(port.norm2() - 1.0) <= 1e-12);
  }
}

TEST_CASE("renormalisation edge cases") {
  PathOamState s = single(4, 1.0);
  CHECK(renormalize_port(s, Port::one) == s.port1);
  CHECK_THROWS_AS(renormalize_port(s, Port::two), std::domain_error);
}

TEST_CASE("phi = 0 differs from phi = pi but keeps the norm") {
  const auto a = mach_zehnder(2, SplitterSpec::balanced(), 0.0);
  const auto b = mach_zehnder(2, SplitterSpec::balanced(), kPi);
  CHECK_FALSE(close(a.port1.amplitude(2), b.port1.amplitude(2)));
  CHECK(a.norm2() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("superposition export") {
  OamSuperposition s;
  s.amplitudes[-2] = {0.5, -0.25};
  s.amplitudes[2] = 1.0;
  std::ostringstream os;
  write_superposition_csv(os, s, {{"ell", "2"}});
  CHECK(os.str() ==
        "# ell = 2\nell,re,im\n"
        "-2,5.0000000000000000e-01,-2.5000000000000000e-01\n"
        "2,1.0000000000000000e+00,0.0000000000000000e+00\n");
}

}  // TEST_SUITE
