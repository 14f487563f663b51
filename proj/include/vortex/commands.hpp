#pragma once

// Library side of the vortexsim subcommands. The run_* functions compute;
// the cmd_* functions also write their files into the output directory and
// print a short summary.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vortex/condensate.hpp"
#include "vortex/config.hpp"
#include "vortex/exec.hpp"
#include "vortex/grid.hpp"
#include "vortex/mode_projection.hpp"
#include "vortex/optics_network.hpp"

namespace vortex {

struct PrepareResult {
  PathOamState output;          // both ports after the network
  OamSuperposition prepared;    // port 1, renormalised
  double post_selection_probability = 0.0;
  cplx a_plus;                  // amplitude on +ell
  cplx a_minus;                 // amplitude on -ell
};

// Sends |ell> into port 1 and keeps port 1. Throws ConfigError when port 1
// comes out empty.
PrepareResult run_prepare(const RunConfig& config);

// Rates and schedule after the rate_units conversion.
PhysicalParams effective_params(const RunConfig& config, const PrepareResult& prepared);
DetuningSchedule effective_schedule(const RunConfig& config);

struct EvolveResult {
  PrepareResult prepared;
  Trajectory trajectory;
  double min_transfer = 0.0;
  double final_transfer = 0.0;
  // Empty when both vortex populations vanish over the tail.
  std::optional<SteadyStateRatio> ratio;
};

EvolveResult run_evolve(const RunConfig& config);

struct SweepRow {
  double value = 0.0;
  double min_transfer = 0.0;
  double final_transfer = 0.0;
  std::optional<SteadyStateRatio> ratio;
};

// `config` with the sweep parameter set to `value`.
RunConfig sweep_point(const RunConfig& config, double value);

// One evolution per sweep value, rows in input order whatever `exec` is.
std::vector<SweepRow> run_sweep(const RunConfig& config, Exec exec = Exec::parallel);

struct RenderResult {
  cplx beta_plus;
  cplx beta_minus;
  ComplexGrid condensate;    // vortex part only
  ComplexGrid interference;  // vortex part plus the reference cloud
  ComplexGrid lg_mode;
};

RenderResult run_render(const RunConfig& config, Exec exec = Exec::parallel);

CoefficientReport run_coefficients(const RunConfig& config, Exec exec = Exec::parallel);

// File-writing front ends. Each returns the paths it wrote.
std::vector<std::filesystem::path> cmd_prepare(const RunConfig& config, std::ostream& out);
std::vector<std::filesystem::path> cmd_evolve(const RunConfig& config, std::ostream& out);
std::vector<std::filesystem::path> cmd_render(const RunConfig& config, std::ostream& out);
std::vector<std::filesystem::path> cmd_sweep(const RunConfig& config, std::ostream& out);
std::vector<std::filesystem::path> cmd_coefficients(const RunConfig& config, std::ostream& out);

void write_sweep_csv(std::ostream& os, const std::string& parameter,
                     const std::vector<SweepRow>& rows,
                     const std::vector<std::pair<std::string, std::string>>& header);

}  // namespace vortex
