// vortexsim: prepare the optical superposition, evolve the condensate, render
// density/phase maps, sweep a parameter or export the projection report.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vortex/commands.hpp"
#include "vortex/config.hpp"
#include "vortex/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::string fig3;
  std::optional<double> fig4;
  std::string out;
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::vector<double> sweep_range;  // from, to, count
  std::optional<int> render_n;
  bool from_evolution = false;
  bool dump_config = false;
};

vortex::RunConfig build_config(const Options& o) {
  vortex::RunConfig config =
      o.config_path.empty() ? vortex::RunConfig{} : vortex::load_config(o.config_path);
  if (!o.fig3.empty() && o.fig4) throw vortex::ConfigError("--fig3 and --fig4 are exclusive");
  if (!o.fig3.empty()) {
    if (o.fig3.size() != 1) throw vortex::ConfigError("--fig3 takes one of a, b, c, d");
    vortex::apply_figure3(config, o.fig3[0]);
  }
  if (o.fig4) vortex::apply_figure4(config, *o.fig4);
  if (!o.out.empty()) config.output_dir = o.out;
  if (!o.sweep_param.empty()) config.sweep.parameter = o.sweep_param;
  if (!o.sweep_values.empty() && !o.sweep_range.empty())
    throw vortex::ConfigError("--values and --range are exclusive");
  if (!o.sweep_values.empty()) config.sweep.values = o.sweep_values;
  if (!o.sweep_range.empty()) {
    const double from = o.sweep_range[0], to = o.sweep_range[1];
    const double count = o.sweep_range[2];
    if (count < 1 || count != static_cast<int>(count))
      throw vortex::ConfigError("--range count must be a positive integer");
    const int n = static_cast<int>(count);
    config.sweep.values.clear();
    for (int i = 0; i < n; ++i)
      config.sweep.values.push_back(n == 1 ? from : from + (to - from) * i / (n - 1));
  }
  if (o.render_n) config.render.n = *o.render_n;
  if (o.from_evolution) config.render.from_evolution = true;
  // Re-run validation on the merged result.
  return vortex::parse_config(vortex::serialize_config(config));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vortex superposition preparation and condensate dynamics"};
  app.require_subcommand(0, 1);
  Options o;
  app.add_option("--config", o.config_path, "JSON configuration file");
  app.add_option("--fig3", o.fig3, "transfer-function preset: a, b, c or d");
  app.add_option("--fig4", o.fig4, "superposition preset with |a+|^2 = RATIO");
  app.add_option("--out", o.out, "output directory");
  app.add_flag("--dump-config", o.dump_config, "print the merged configuration to stdout");

  auto* prepare = app.add_subcommand("prepare", "optical superposition after post-selection");
  auto* evolve = app.add_subcommand("evolve", "integrate the projected condensate equations");
  auto* render = app.add_subcommand("render", "density, phase and LG mode grids");
  render->add_option("--n", o.render_n, "grid points per axis");
  render->add_flag("--from-evolution", o.from_evolution,
                   "use the final evolved vortex amplitudes");
  auto* sweep = app.add_subcommand("sweep", "repeat evolve over a parameter range");
  sweep->add_option("--param", o.sweep_param, "delta0, slope, coupling, kappa or splitter-ratio");
  sweep->add_option("--values", o.sweep_values, "explicit values");
  sweep->add_option("--range", o.sweep_range, "FROM TO COUNT")->expected(3);
  auto* coefficients =
      app.add_subcommand("coefficients", "recompute the projected-equation coefficients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (app.get_subcommands().empty() && !o.dump_config) {
    std::cerr << "a subcommand is required (or --dump-config)\n" << app.help();
    return kExitConfig;
  }

  try {
    const vortex::RunConfig config = build_config(o);
    if (o.dump_config) std::cout << vortex::serialize_config(config);
    if (prepare->parsed()) vortex::cmd_prepare(config, std::cout);
    if (evolve->parsed()) vortex::cmd_evolve(config, std::cout);
    if (render->parsed()) vortex::cmd_render(config, std::cout);
    if (sweep->parsed()) vortex::cmd_sweep(config, std::cout);
    if (coefficients->parsed()) vortex::cmd_coefficients(config, std::cout);
  } catch (const vortex::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const vortex::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
