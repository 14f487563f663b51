#include "vortex/commands.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "vortex/errors.hpp"
#include "vortex/oam_modes.hpp"

namespace vortex {

namespace fs = std::filesystem;

PrepareResult run_prepare(const RunConfig& config) {
  const int ell = config.optics.ell;
  if (ell < 1 || ell > kMaxModeOrder) throw ConfigError("optics.ell must lie in [1, 20]");

  PrepareResult out;
  if (config.optics.network) {
    PathOamState input;
    input.port1.amplitudes[ell] = 1.0;
    out.output = apply_network(input, *config.optics.network);
  } else {
    check_unitary(config.optics.splitter);
    out.output = mach_zehnder(ell, config.optics.splitter, config.optics.phi);
  }
  out.post_selection_probability = out.output.port1.norm2();
  try {
    out.prepared = renormalize_port(out.output, Port::one);
  } catch (const std::domain_error&) {
    throw ConfigError("the network leaves port 1 empty; nothing to post-select");
  }
  out.a_plus = out.prepared.amplitude(ell);
  out.a_minus = out.prepared.amplitude(-ell);
  return out;
}

namespace {

double rate_factor(const RunConfig& config) {
  return config.rate_units == RateUnits::cyclic ? 2.0 * std::numbers::pi : 1.0;
}

fs::path output_dir(const RunConfig& config) {
  fs::path dir = config.output_dir.empty() ? fs::path(".") : fs::path(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

std::optional<SteadyStateRatio> try_ratio(const Trajectory& traj, double tail_fraction) {
  try {
    return steady_state_ratio(traj, tail_fraction);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

HeaderLines header_with(const RunConfig& config, const std::string& command) {
  HeaderLines h = config_header(config);
  h.insert(h.begin() + 1, {"command", command});
  return h;
}

}  // namespace

PhysicalParams effective_params(const RunConfig& config, const PrepareResult& prepared) {
  PhysicalParams p;
  p.omega_perp = config.omega_perp;
  p.kappa = config.kappa;
  p.coupling = config.coupling;
  p.a_plus = prepared.a_plus;
  p.a_minus = prepared.a_minus;
  p.ell = config.optics.ell;
  p = p.scaled(rate_factor(config));
  p.validate();
  return p;
}

DetuningSchedule effective_schedule(const RunConfig& config) {
  return config.schedule.scaled(rate_factor(config));
}

EvolveResult run_evolve(const RunConfig& config) {
  EvolveResult out;
  out.prepared = run_prepare(config);
  const PhysicalParams params = effective_params(config, out.prepared);
  const auto& in = config.integration;
  out.trajectory = integrate(config.initial, params, effective_schedule(config), in.t_end, in.tol,
                             in.samples);
  out.min_transfer = out.trajectory.min_transfer();
  out.final_transfer = transfer_function(out.trajectory.states.back());
  out.ratio = try_ratio(out.trajectory, in.tail_fraction);
  return out;
}

RunConfig sweep_point(const RunConfig& config, double value) {
  RunConfig c = config;
  const std::string& name = config.sweep.parameter;
  if (name == "delta0") {
    c.schedule.delta0 = value;
  } else if (name == "slope") {
    if (c.schedule.kind != DetuningSchedule::Kind::linear)
      throw ConfigError("sweeping slope needs a linear schedule");
    c.schedule.slope = value;
  } else if (name == "coupling") {
    c.coupling = value;
  } else if (name == "kappa") {
    c.kappa = value;
  } else if (name == "splitter-ratio") {
    if (!(value >= 0.0 && value <= 1.0))
      throw ConfigError("splitter-ratio values must lie in [0, 1]");
    c.optics.splitter = SplitterSpec::from_ratio(value);
  } else {
    throw ConfigError("unknown sweep parameter '" + name +
                      "' (expected delta0, slope, coupling, kappa or splitter-ratio)");
  }
  return c;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, Exec exec) {
  const auto& values = config.sweep.values;
  if (values.empty()) throw ConfigError("sweep range is empty");
  // Validate every point up front so configuration errors surface before any work.
  std::vector<RunConfig> points;
  points.reserve(values.size());
  for (double v : values) points.push_back(sweep_point(config, v));

  const long n = static_cast<long>(values.size());
  std::vector<SweepRow> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  auto body = [&](long i) {
    try {
      const EvolveResult r = run_evolve(points[i]);
      rows[i] = SweepRow{values[i], r.min_transfer, r.final_transfer, r.ratio};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

RenderResult run_render(const RunConfig& config, Exec exec) {
  const auto& r = config.render;
  RenderResult out;
  out.beta_plus = r.beta_plus;
  out.beta_minus = r.beta_minus;
  if (r.from_evolution) {
    const EvolveResult ev = run_evolve(config);
    out.beta_plus = ev.trajectory.states.back().beta_plus;
    out.beta_minus = ev.trajectory.states.back().beta_minus;
  }
  CondensateModeSpec spec;
  spec.L_perp = config.trap.L_perp;
  spec.L_z = config.trap.L_z;
  spec.ell = config.optics.ell;
  spec.validate();
  const double hw = r.half_width * spec.L_perp;
  out.condensate =
      sample_grid(condensate_plane_field(spec, out.beta_plus, out.beta_minus), hw, r.n, exec);
  out.interference = sample_grid(
      condensate_plane_field(spec, out.beta_plus, out.beta_minus, r.admixture), hw, r.n, exec);

  LgModeSpec lg{r.lg_p, config.optics.ell, r.lg_w0};
  lg.validate();
  out.lg_mode = sample_mode_grid(lg, r.lg_half_width * r.lg_w0, r.n, exec);
  return out;
}

CoefficientReport run_coefficients(const RunConfig& config, Exec exec) {
  TrapSpec trap = config.trap;
  CondensateModeSpec spec;
  spec.L_perp = trap.L_perp;
  spec.L_z = trap.L_z;
  spec.ell = config.optics.ell;
  if (config.projection.oscillator_length) {
    spec.L_perp = std::sqrt(kHbar / (trap.mass * trap.omega_perp));
    trap.L_perp = spec.L_perp;
  }
  const PrepareResult prep = run_prepare(config);
  RabiProfileSpec rabi;
  rabi.a_plus = prep.a_plus;
  rabi.a_minus = prep.a_minus;
  rabi.omega0 = config.projection.omega0;
  rabi.waist = config.projection.waist;
  rabi.ell = config.optics.ell;
  return projected_coefficients(spec, trap, rabi, config.projection.order, exec);
}

std::vector<fs::path> cmd_prepare(const RunConfig& config, std::ostream& out) {
  const PrepareResult r = run_prepare(config);
  const fs::path path = output_dir(config) / "prepared_state.csv";
  auto os = open_output(path);
  HeaderLines h = header_with(config, "prepare");
  h.emplace_back("post_selection_probability", format_number(r.post_selection_probability));
  write_superposition_csv(os, r.prepared, h);
  out << "post-selection probability " << format_number(r.post_selection_probability) << '\n'
      << "a_plus  " << format_number(r.a_plus.real()) << ' ' << format_number(r.a_plus.imag())
      << '\n'
      << "a_minus " << format_number(r.a_minus.real()) << ' ' << format_number(r.a_minus.imag())
      << '\n';
  return {path};
}

std::vector<fs::path> cmd_evolve(const RunConfig& config, std::ostream& out) {
  const EvolveResult r = run_evolve(config);
  const fs::path path = output_dir(config) / "trajectory.csv";
  auto os = open_output(path);
  write_trajectory_csv(os, r.trajectory, header_with(config, "evolve"));
  out << "min f   " << format_number(r.min_transfer) << '\n'
      << "final f " << format_number(r.final_transfer) << '\n';
  if (r.ratio)
    out << "tail ratio plus " << format_number(r.ratio->plus) << " minus "
        << format_number(r.ratio->minus) << '\n';
  else
    out << "tail ratio undefined (vortex populations vanish)\n";
  out << "max norm drift " << format_number(r.trajectory.max_norm_drift()) << '\n';
  return {path};
}

std::vector<fs::path> cmd_render(const RunConfig& config, std::ostream& out) {
  const RenderResult r = run_render(config);
  const fs::path dir = output_dir(config);
  HeaderLines h = header_with(config, "render");
  h.emplace_back("beta_plus", format_number(r.beta_plus.real()) + " " +
                                  format_number(r.beta_plus.imag()));
  h.emplace_back("beta_minus", format_number(r.beta_minus.real()) + " " +
                                   format_number(r.beta_minus.imag()));
  struct Item {
    const char* name;
    const ComplexGrid* grid;
    std::optional<GridQuantity> quantity;
  };
  const Item items[] = {
      {"condensate_field.csv", &r.condensate, std::nullopt},
      {"condensate_density.txt", &r.condensate, GridQuantity::intensity},
      {"condensate_phase.txt", &r.condensate, GridQuantity::phase},
      {"interference_density.txt", &r.interference, GridQuantity::intensity},
      {"lg_field.csv", &r.lg_mode, std::nullopt},
      {"lg_intensity.txt", &r.lg_mode, GridQuantity::intensity},
      {"lg_phase.txt", &r.lg_mode, GridQuantity::phase},
  };
  std::vector<fs::path> written;
  for (const auto& item : items) {
    const fs::path path = dir / item.name;
    auto os = open_output(path);
    if (item.quantity)
      write_grid_matrix(os, *item.grid, *item.quantity, h);
    else
      write_grid_csv(os, *item.grid, h);
    written.push_back(path);
  }
  out << "wrote " << written.size() << " grids of " << config.render.n << " x "
      << config.render.n << " to " << dir.string() << '\n';
  return written;
}

void write_sweep_csv(std::ostream& os, const std::string& parameter,
                     const std::vector<SweepRow>& rows, const HeaderLines& header) {
  for (const auto& [key, value] : header) os << "# " << key << " = " << value << '\n';
  os << parameter << ",min_f,final_f,ratio_plus,ratio_minus,tail_oscillation\n";
  const std::string nan = "nan";
  for (const auto& row : rows) {
    os << format_number(row.value) << ',' << format_number(row.min_transfer) << ','
       << format_number(row.final_transfer) << ',';
    if (row.ratio)
      os << format_number(row.ratio->plus) << ',' << format_number(row.ratio->minus) << ','
         << format_number(row.ratio->tail_oscillation) << '\n';
    else
      os << nan << ',' << nan << ',' << nan << '\n';
  }
}

std::vector<fs::path> cmd_sweep(const RunConfig& config, std::ostream& out) {
  const auto rows = run_sweep(config);
  const fs::path path = output_dir(config) / "sweep_summary.csv";
  auto os = open_output(path);
  write_sweep_csv(os, config.sweep.parameter, rows, header_with(config, "sweep"));
  out << "swept " << config.sweep.parameter << " over " << rows.size() << " values\n";
  return {path};
}

std::vector<fs::path> cmd_coefficients(const RunConfig& config, std::ostream& out) {
  const CoefficientReport report = run_coefficients(config);
  const fs::path path = output_dir(config) / "coefficients.csv";
  auto os = open_output(path);
  for (const auto& [key, value] : header_with(config, "coefficients"))
    os << "# " << key << " = " << value << '\n';
  write_coefficient_report(os, report);
  int flagged = 0;
  for (const auto& e : report.entries) flagged += e.flagged ? 1 : 0;
  out << report.entries.size() << " coefficients, " << flagged
      << " differ from the printed values\n";
  return {path};
}

}  // namespace vortex
