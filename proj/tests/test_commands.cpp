#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vortex/commands.hpp"
#include "vortex/errors.hpp"

using namespace vortex;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunConfig scratch_config(const std::string& name) {
  RunConfig c;
  c.output_dir = std::string(TEST_SCRATCH_DIR) + "/" + name;
  fs::remove_all(c.output_dir);
  return c;
}

RunConfig short_run() {
  RunConfig c;
  c.integration.t_end = 0.02;
  c.integration.samples = 201;
  return c;
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("prepare") {
  SUBCASE("defaults give the balanced pair") {
    const auto r = run_prepare(RunConfig{});
    CHECK(r.post_selection_probability == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(std::abs(r.a_plus) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(std::abs(r.a_minus) - 1.0 / std::sqrt(2.0)) <= 1e-15);
  }
  SUBCASE("full transmission gives one component") {
    RunConfig c;
    c.optics.splitter = {0.0, 1.0};
    const auto r = run_prepare(c);
    CHECK(std::abs(std::abs(r.a_plus) - 1.0) <= 1e-15);
    CHECK(std::abs(r.a_minus) <= 1e-15);
  }
  SUBCASE("phi = 0 moves weight between the ports") {
    RunConfig c;
    c.optics.phi = 0.0;
    const auto r0 = run_prepare(c);
    const auto rpi = run_prepare(RunConfig{});
    CHECK_FALSE(r0.output == rpi.output);
    CHECK(r0.output.norm2() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("explicit networks") {
    RunConfig c;
    c.optics.network = Network{element::DovePrism{Port::one}};
    const auto r = run_prepare(c);
    CHECK(r.a_minus == 1.0);
    CHECK(r.post_selection_probability == 1.0);
    c.optics.network = Network{element::BeamSplitter{{0.0, 1.0}}};
    CHECK_THROWS_AS(run_prepare(c), ConfigError);
  }
  SUBCASE("bad charge") {
    RunConfig c;
    c.optics.ell = 0;
    CHECK_THROWS_AS(run_prepare(c), ConfigError);
  }
}

TEST_CASE("rate units") {
  RunConfig c;
  c.rate_units = RateUnits::cyclic;
  const auto p = effective_params(c, run_prepare(c));
  CHECK(p.omega_perp == doctest::Approx(2 * kPi * 132.0));
  CHECK(p.kappa == doctest::Approx(2 * kPi * 422.0));
  CHECK(effective_schedule(c).slope == doctest::Approx(-2 * kPi * 160000.0));
  const auto q = effective_params(RunConfig{}, run_prepare(RunConfig{}));
  CHECK(q.omega_perp == 132.0);
}

TEST_CASE("evolve chains prepare and integrate") {
  const auto r = run_evolve(RunConfig{});
  CHECK(r.min_transfer <= -0.9);
  CHECK(r.final_transfer <= -0.9);
  REQUIRE(r.ratio);
  CHECK(std::abs(r.ratio->plus - 0.5) <= 0.025);
  RunConfig c;
  apply_figure4(c, 0.8);
  const auto s = run_evolve(c);
  REQUIRE(s.ratio);
  CHECK(std::abs(s.ratio->plus / 0.8 - 1.0) <= 0.05);
  CHECK(std::abs(s.ratio->minus / 0.2 - 1.0) <= 0.05);
}

TEST_CASE("sweeps") {
  SUBCASE("empty and unknown") {
    RunConfig c;
    c.sweep.values.clear();
    CHECK_THROWS_AS(run_sweep(c), ConfigError);
    c.sweep.values = {1.0};
    c.sweep.parameter = "omega";
    CHECK_THROWS_AS(run_sweep(c), ConfigError);
    c.sweep.parameter = "splitter-ratio";
    c.sweep.values = {1.5};
    CHECK_THROWS_AS(run_sweep(c), ConfigError);
    RunConfig k;
    apply_figure3(k, 'a');
    k.sweep.parameter = "slope";
    CHECK_THROWS_AS(run_sweep(k), ConfigError);
  }
  SUBCASE("constant detunings reproduce the case ordering") {
    RunConfig c;
    apply_figure3(c, 'a');
    c.sweep.parameter = "delta0";
    c.sweep.values = {0.0, 380.0, 900.0};
    const auto rows = run_sweep(c);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].value == 0.0);
    CHECK(rows[2].value == 900.0);
    // min f: 900 < 380 < 0
    CHECK(rows[2].min_transfer < rows[1].min_transfer);
    CHECK(rows[1].min_transfer < rows[0].min_transfer);
    for (const auto& row : rows) CHECK(row.min_transfer > -0.9);
  }
  SUBCASE("single point equals evolve") {
    RunConfig c;
    c.sweep.parameter = "coupling";
    c.sweep.values = {132.0};
    const auto rows = run_sweep(c);
    const auto e = run_evolve(RunConfig{});
    CHECK(rows[0].min_transfer == e.min_transfer);
    CHECK(rows[0].final_transfer == e.final_transfer);
    CHECK(rows[0].ratio->plus == e.ratio->plus);
  }
  SUBCASE("splitter ratio sweep is monotone") {
    RunConfig c;
    c.sweep.parameter = "splitter-ratio";
    c.sweep.values = {0.1, 0.3, 0.5, 0.7, 0.9};
    const auto rows = run_sweep(c);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].ratio->plus > rows[k - 1].ratio->plus);
    for (const auto& row : rows) CHECK(std::abs(row.ratio->plus / row.value - 1.0) <= 0.05);
  }
  SUBCASE("serial and parallel sweeps agree exactly") {
    const int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    RunConfig c = short_run();
    c.sweep.parameter = "kappa";
    c.sweep.values = {0.0, 100.0, 422.0, 800.0, 1200.0};
    const auto a = run_sweep(c, Exec::serial);
    const auto b = run_sweep(c, Exec::parallel);
    omp_set_num_threads(saved);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].value == b[k].value);
      CHECK(a[k].min_transfer == b[k].min_transfer);
      CHECK(a[k].final_transfer == b[k].final_transfer);
    }
  }
}

TEST_CASE("rendering") {
  SUBCASE("equal superposition shows 2 ell lobes") {
    const auto r = run_render(RunConfig{});
    const double radius = std::sqrt(2.0) * RunConfig{}.trap.L_perp;
    std::vector<double> ring;
    for (const auto& v : sample_ring(r.condensate, radius, 720)) ring.push_back(std::norm(v));
    CHECK(count_circular_maxima(ring) == 4);
  }
  SUBCASE("single vortex: uniform ring and 2 pi ell winding") {
    RunConfig c;
    c.render.beta_plus = 1.0;
    c.render.beta_minus = 0.0;
    const auto r = run_render(c);
    const double radius = c.trap.L_perp;
    const auto ring = sample_ring(r.condensate, radius, 720);
    CHECK(std::abs(loop_winding_phase(ring) - 4.0 * kPi) <= 1e-3);
    double lo = 1e300, hi = 0.0;
    for (const auto& v : ring) {
      lo = std::min(lo, std::norm(v));
      hi = std::max(hi, std::norm(v));
    }
    CHECK((hi - lo) / hi <= 0.05);  // bilinear interpolation error only
  }
  SUBCASE("final evolved amplitudes") {
    RunConfig c = short_run();
    c.render.from_evolution = true;
    c.render.n = 17;
    const auto r = run_render(c);
    const auto e = run_evolve(c);
    CHECK(r.beta_plus == e.trajectory.states.back().beta_plus);
    CHECK(r.beta_minus == e.trajectory.states.back().beta_minus);
  }
  SUBCASE("files") {
    RunConfig c = scratch_config("render");
    c.render.n = 9;
    std::ostringstream log;
    const auto files = cmd_render(c, log);
    CHECK(files.size() == 7);
    for (const auto& f : files) CHECK(fs::file_size(f) > 0);
    c.render.n = 1;
    CHECK_THROWS_AS(run_render(c), ConfigError);
  }
}

TEST_CASE("file outputs are deterministic") {
  RunConfig c = scratch_config("determinism");
  c.integration.samples = 401;
  std::ostringstream log;
  const auto first = slurp(cmd_evolve(c, log).front());
  const auto second = slurp(cmd_evolve(c, log).front());
  CHECK(first == second);
  CHECK(first.find("# version = ") == 0);
  CHECK(first.find("# command = evolve") != std::string::npos);

  c.sweep.parameter = "splitter-ratio";
  c.sweep.values = {0.2, 0.5, 0.8};
  const auto s1 = slurp(cmd_sweep(c, log).front());
  const auto s2 = slurp(cmd_sweep(c, log).front());
  CHECK(s1 == s2);
  CHECK(s1.find("splitter-ratio,min_f,final_f,ratio_plus,ratio_minus,tail_oscillation\n") !=
        std::string::npos);

  const auto p = slurp(cmd_prepare(c, log).front());
  CHECK(p.find("ell,re,im\n") != std::string::npos);
}

TEST_CASE("coefficient export") {
  RunConfig c = scratch_config("coefficients");
  std::ostringstream log;
  const auto files = cmd_coefficients(c, log);
  const auto text = slurp(files.front());
  CHECK(text.find("alpha_self_term_over_kappa,3.0000000000000000e+00,") != std::string::npos);
  c.projection.oscillator_length = true;
  const auto report = run_coefficients(c);
  CHECK(std::abs(report.at("vortex_energy_offset_over_omega_perp").recomputed / 2.0 - 1.0) <= 1e-6);
}

}  // TEST_SUITE
