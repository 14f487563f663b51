#pragma once

// Run configuration for the vortexsim front end. Every field defaults to the
// balanced-superposition sweep scenario; see README.md for the key table.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "vortex/condensate.hpp"
#include "vortex/oam_modes.hpp"
#include "vortex/optics_network.hpp"

namespace vortex {

enum class RateUnits {
  as_printed,  // rates enter the equations exactly as written
  cyclic,      // rates are read as cycles per second and multiplied by 2 pi
};

struct OpticsOptions {
  int ell = 2;
  double phi = 3.141592653589793;
  SplitterSpec splitter = SplitterSpec::balanced();
  // Replaces the Mach-Zehnder arrangement when present.
  std::optional<Network> network;
  bool operator==(const OpticsOptions&) const = default;
};

struct IntegrationOptions {
  double t_end = 0.1;
  double tol = 1e-10;
  int samples = 2001;
  double tail_fraction = 0.2;
  bool operator==(const IntegrationOptions&) const = default;
};

struct RenderOptions {
  int n = 129;
  double half_width = 4.0;  // in units of L_perp
  std::complex<double> beta_plus{0.7071067811865476, 0.0};
  std::complex<double> beta_minus{0.7071067811865476, 0.0};
  std::complex<double> admixture{0.5, 0.0};  // weight of the non-rotating reference cloud
  bool from_evolution = false;  // use the final evolved (beta+, beta-) instead
  int lg_p = 0;
  double lg_w0 = 1e-3;            // [m]
  double lg_half_width = 3.0;     // in units of lg_w0
  bool operator==(const RenderOptions&) const = default;
};

struct SweepOptions {
  std::string parameter = "delta0";  // delta0 | slope | coupling | kappa | splitter-ratio
  std::vector<double> values = {0.0, 380.0, 900.0};
  bool operator==(const SweepOptions&) const = default;
};

struct ProjectionOptions {
  int order = 24;
  double waist = 47e-6;  // Raman beam waist [m]
  double omega0 = 1.0;
  // Replace L_perp by the transverse oscillator length sqrt(hbar / (m omega_perp)).
  bool oscillator_length = false;
  bool operator==(const ProjectionOptions&) const = default;
};

struct RunConfig {
  std::string experiment = "fig3d";
  RateUnits rate_units = RateUnits::as_printed;
  double omega_perp = 132.0;
  double kappa = 422.0;
  double coupling = 132.0;
  OpticsOptions optics;
  DetuningSchedule schedule = DetuningSchedule::linear(3000.0, -160000.0);
  IntegrationOptions integration;
  CondensateAmplitudes initial;
  TrapSpec trap;
  RenderOptions render;
  SweepOptions sweep;
  ProjectionOptions projection;
  std::string output_dir = ".";

  RunConfig();
  bool operator==(const RunConfig&) const = default;
};

// Parsing rejects unknown keys and ill-typed values with ConfigError. Keys
// left out keep their defaults.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

// "# key = value" header lines listing every configuration field.
std::vector<std::pair<std::string, std::string>> config_header(const RunConfig& config);

// Overlays a transfer-function preset ('a'..'d') on `config`.
void apply_figure3(RunConfig& config, char which);
// Overlays a superposition preset with |t|^2 = plus_fraction.
void apply_figure4(RunConfig& config, double plus_fraction);

inline constexpr const char* kCodeVersion = "vortexsim 1.0.0";

}  // namespace vortex
