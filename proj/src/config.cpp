#include "vortex/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "vortex/errors.hpp"
#include "vortex/presets.hpp"

namespace vortex {

using nlohmann::json;

RunConfig::RunConfig() : trap(presets::reference_trap()) {}

namespace {

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

double read_number(const json& j, const std::string& name) {
  if (!j.is_number()) throw ConfigError(name + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(name + " must be finite");
  return v;
}

int read_int(const json& j, const std::string& name) {
  if (!j.is_number_integer()) throw ConfigError(name + " must be an integer");
  return j.get<int>();
}

bool read_bool(const json& j, const std::string& name) {
  if (!j.is_boolean()) throw ConfigError(name + " must be true or false");
  return j.get<bool>();
}

std::string read_string(const json& j, const std::string& name) {
  if (!j.is_string()) throw ConfigError(name + " must be a string");
  return j.get<std::string>();
}

// Complex numbers are [re, im] pairs; a bare number is read as real.
cplx read_complex(const json& j, const std::string& name) {
  if (j.is_number()) return {read_number(j, name), 0.0};
  if (!j.is_array() || j.size() != 2) throw ConfigError(name + " must be [re, im]");
  return {read_number(j[0], name), read_number(j[1], name)};
}

json write_complex(cplx c) { return json::array({c.real(), c.imag()}); }

template <typename T, typename Reader>
void read_opt(const json& obj, const char* key, T& target, Reader reader,
              const std::string& where) {
  if (obj.contains(key)) target = reader(obj.at(key), where + "." + key);
}

Port read_port(const json& j, const std::string& name) {
  const int p = read_int(j, name);
  if (p != 1 && p != 2) throw ConfigError(name + " must be 1 or 2");
  return static_cast<Port>(p);
}

NetworkElement read_element(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) throw ConfigError(where + " needs a type");
  const std::string type = read_string(j.at("type"), where + ".type");
  if (type == "beam_splitter") {
    require_keys(j, where, {"type", "r", "t"});
    element::BeamSplitter bs{SplitterSpec::balanced()};
    read_opt(j, "r", bs.spec.r, read_complex, where);
    read_opt(j, "t", bs.spec.t, read_complex, where);
    return bs;
  }
  if (type == "dove_prism") {
    require_keys(j, where, {"type", "port"});
    if (!j.contains("port")) throw ConfigError(where + " needs a port");
    return element::DovePrism{read_port(j.at("port"), where + ".port")};
  }
  if (type == "phase") {
    require_keys(j, where, {"type", "port", "phi"});
    if (!j.contains("port") || !j.contains("phi"))
      throw ConfigError(where + " needs port and phi");
    return element::PhaseShift{read_port(j.at("port"), where + ".port"),
                               read_number(j.at("phi"), where + ".phi")};
  }
  if (type == "mirror") {
    require_keys(j, where, {"type"});
    return element::Mirror{};
  }
  throw ConfigError("unknown element type '" + type + "' in " + where);
}

json write_element(const NetworkElement& e) {
  return std::visit(
      [](const auto& el) -> json {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, element::BeamSplitter>)
          return {{"type", "beam_splitter"}, {"r", write_complex(el.spec.r)},
                  {"t", write_complex(el.spec.t)}};
        else if constexpr (std::is_same_v<T, element::DovePrism>)
          return {{"type", "dove_prism"}, {"port", static_cast<int>(el.port)}};
        else if constexpr (std::is_same_v<T, element::PhaseShift>)
          return {{"type", "phase"}, {"port", static_cast<int>(el.port)}, {"phi", el.phi}};
        else
          return {{"type", "mirror"}};
      },
      e);
}

RateUnits read_units(const json& j, const std::string& name) {
  const std::string s = read_string(j, name);
  if (s == "as_printed") return RateUnits::as_printed;
  if (s == "cyclic") return RateUnits::cyclic;
  throw ConfigError(name + " must be \"as_printed\" or \"cyclic\"");
}

std::string units_name(RateUnits u) { return u == RateUnits::cyclic ? "cyclic" : "as_printed"; }

void validate(const RunConfig& c) {
  if (c.integration.samples < 2) throw ConfigError("integration.samples must be >= 2");
  if (!(c.integration.t_end > 0.0)) throw ConfigError("integration.t_end must be positive");
  if (!(c.integration.tail_fraction > 0.0 && c.integration.tail_fraction < 1.0))
    throw ConfigError("integration.tail_fraction must lie in (0, 1)");
  if (!(c.integration.tol >= kMinTolerance && c.integration.tol <= kMaxTolerance))
    throw ConfigError("integration.tol must lie in [1e-13, 1e-6]");
  if (c.render.n < 2) throw ConfigError("render.n must be >= 2");
  if (!(c.render.half_width > 0.0) || !(c.render.lg_half_width > 0.0) || !(c.render.lg_w0 > 0.0))
    throw ConfigError("render widths must be positive");
  if (c.projection.order < 2 || c.projection.order > 128)
    throw ConfigError("projection.order must lie in [2, 128]");
  check_unitary(c.optics.splitter);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  require_keys(root, "config",
               {"experiment", "rate_units", "physics", "optics", "schedule", "integration",
                "initial", "trap", "render", "sweep", "projection", "output_dir"});
  RunConfig c;
  read_opt(root, "experiment", c.experiment, read_string, "config");
  read_opt(root, "rate_units", c.rate_units, read_units, "config");
  read_opt(root, "output_dir", c.output_dir, read_string, "config");

  if (root.contains("physics")) {
    const json& p = root.at("physics");
    require_keys(p, "physics", {"omega_perp", "kappa", "coupling"});
    read_opt(p, "omega_perp", c.omega_perp, read_number, "physics");
    read_opt(p, "kappa", c.kappa, read_number, "physics");
    read_opt(p, "coupling", c.coupling, read_number, "physics");
  }
  if (root.contains("optics")) {
    const json& o = root.at("optics");
    require_keys(o, "optics", {"ell", "phi", "splitter", "network"});
    read_opt(o, "ell", c.optics.ell, read_int, "optics");
    read_opt(o, "phi", c.optics.phi, read_number, "optics");
    if (o.contains("splitter")) {
      const json& s = o.at("splitter");
      require_keys(s, "optics.splitter", {"r", "t"});
      read_opt(s, "r", c.optics.splitter.r, read_complex, "optics.splitter");
      read_opt(s, "t", c.optics.splitter.t, read_complex, "optics.splitter");
    }
    if (o.contains("network")) {
      const json& n = o.at("network");
      if (!n.is_array()) throw ConfigError("optics.network must be an array");
      Network net;
      for (std::size_t i = 0; i < n.size(); ++i)
        net.push_back(read_element(n[i], "optics.network[" + std::to_string(i) + "]"));
      c.optics.network = std::move(net);
    }
  }
  if (root.contains("schedule")) {
    const json& s = root.at("schedule");
    require_keys(s, "schedule", {"kind", "delta0", "slope"});
    if (s.contains("kind")) {
      const std::string kind = read_string(s.at("kind"), "schedule.kind");
      if (kind == "constant") {
        c.schedule.kind = DetuningSchedule::Kind::constant;
        c.schedule.slope = 0.0;
      } else if (kind == "linear") {
        c.schedule.kind = DetuningSchedule::Kind::linear;
      } else {
        throw ConfigError("schedule.kind must be \"constant\" or \"linear\"");
      }
    }
    read_opt(s, "delta0", c.schedule.delta0, read_number, "schedule");
    read_opt(s, "slope", c.schedule.slope, read_number, "schedule");
    if (c.schedule.kind == DetuningSchedule::Kind::constant && c.schedule.slope != 0.0)
      throw ConfigError("schedule.slope is only meaningful for linear schedules");
  }
  if (root.contains("integration")) {
    const json& s = root.at("integration");
    require_keys(s, "integration", {"t_end", "tol", "samples", "tail_fraction"});
    read_opt(s, "t_end", c.integration.t_end, read_number, "integration");
    read_opt(s, "tol", c.integration.tol, read_number, "integration");
    read_opt(s, "samples", c.integration.samples, read_int, "integration");
    read_opt(s, "tail_fraction", c.integration.tail_fraction, read_number, "integration");
  }
  if (root.contains("initial")) {
    const json& s = root.at("initial");
    require_keys(s, "initial", {"alpha", "beta_plus", "beta_minus"});
    read_opt(s, "alpha", c.initial.alpha, read_complex, "initial");
    read_opt(s, "beta_plus", c.initial.beta_plus, read_complex, "initial");
    read_opt(s, "beta_minus", c.initial.beta_minus, read_complex, "initial");
  }
  if (root.contains("trap")) {
    const json& s = root.at("trap");
    require_keys(s, "trap", {"omega_perp", "omega_z", "L_perp", "L_z", "mass", "a_sc",
                             "atom_number"});
    read_opt(s, "omega_perp", c.trap.omega_perp, read_number, "trap");
    read_opt(s, "omega_z", c.trap.omega_z, read_number, "trap");
    read_opt(s, "L_perp", c.trap.L_perp, read_number, "trap");
    read_opt(s, "L_z", c.trap.L_z, read_number, "trap");
    read_opt(s, "mass", c.trap.mass, read_number, "trap");
    read_opt(s, "a_sc", c.trap.a_sc, read_number, "trap");
    read_opt(s, "atom_number", c.trap.atom_number, read_number, "trap");
  }
  if (root.contains("render")) {
    const json& s = root.at("render");
    require_keys(s, "render", {"n", "half_width", "beta_plus", "beta_minus", "admixture",
                               "from_evolution", "lg_p", "lg_w0", "lg_half_width"});
    read_opt(s, "n", c.render.n, read_int, "render");
    read_opt(s, "half_width", c.render.half_width, read_number, "render");
    read_opt(s, "beta_plus", c.render.beta_plus, read_complex, "render");
    read_opt(s, "beta_minus", c.render.beta_minus, read_complex, "render");
    read_opt(s, "admixture", c.render.admixture, read_complex, "render");
    read_opt(s, "from_evolution", c.render.from_evolution, read_bool, "render");
    read_opt(s, "lg_p", c.render.lg_p, read_int, "render");
    read_opt(s, "lg_w0", c.render.lg_w0, read_number, "render");
    read_opt(s, "lg_half_width", c.render.lg_half_width, read_number, "render");
  }
  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    require_keys(s, "sweep", {"parameter", "values"});
    read_opt(s, "parameter", c.sweep.parameter, read_string, "sweep");
    if (s.contains("values")) {
      const json& v = s.at("values");
      if (!v.is_array()) throw ConfigError("sweep.values must be an array");
      c.sweep.values.clear();
      for (const auto& x : v) c.sweep.values.push_back(read_number(x, "sweep.values"));
    }
  }
  if (root.contains("projection")) {
    const json& s = root.at("projection");
    require_keys(s, "projection", {"order", "waist", "omega0", "oscillator_length"});
    read_opt(s, "order", c.projection.order, read_int, "projection");
    read_opt(s, "waist", c.projection.waist, read_number, "projection");
    read_opt(s, "omega0", c.projection.omega0, read_number, "projection");
    read_opt(s, "oscillator_length", c.projection.oscillator_length, read_bool, "projection");
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

json to_json(const RunConfig& c) {
  json optics = {{"ell", c.optics.ell},
                 {"phi", c.optics.phi},
                 {"splitter",
                  {{"r", write_complex(c.optics.splitter.r)},
                   {"t", write_complex(c.optics.splitter.t)}}}};
  if (c.optics.network) {
    json net = json::array();
    for (const auto& e : *c.optics.network) net.push_back(write_element(e));
    optics["network"] = net;
  }
  return {
      {"experiment", c.experiment},
      {"rate_units", units_name(c.rate_units)},
      {"output_dir", c.output_dir},
      {"physics", {{"omega_perp", c.omega_perp}, {"kappa", c.kappa}, {"coupling", c.coupling}}},
      {"optics", optics},
      {"schedule",
       {{"kind", to_string(c.schedule.kind)},
        {"delta0", c.schedule.delta0},
        {"slope", c.schedule.slope}}},
      {"integration",
       {{"t_end", c.integration.t_end},
        {"tol", c.integration.tol},
        {"samples", c.integration.samples},
        {"tail_fraction", c.integration.tail_fraction}}},
      {"initial",
       {{"alpha", write_complex(c.initial.alpha)},
        {"beta_plus", write_complex(c.initial.beta_plus)},
        {"beta_minus", write_complex(c.initial.beta_minus)}}},
      {"trap",
       {{"omega_perp", c.trap.omega_perp},
        {"omega_z", c.trap.omega_z},
        {"L_perp", c.trap.L_perp},
        {"L_z", c.trap.L_z},
        {"mass", c.trap.mass},
        {"a_sc", c.trap.a_sc},
        {"atom_number", c.trap.atom_number}}},
      {"render",
       {{"n", c.render.n},
        {"half_width", c.render.half_width},
        {"beta_plus", write_complex(c.render.beta_plus)},
        {"beta_minus", write_complex(c.render.beta_minus)},
        {"admixture", write_complex(c.render.admixture)},
        {"from_evolution", c.render.from_evolution},
        {"lg_p", c.render.lg_p},
        {"lg_w0", c.render.lg_w0},
        {"lg_half_width", c.render.lg_half_width}}},
      {"sweep", {{"parameter", c.sweep.parameter}, {"values", c.sweep.values}}},
      {"projection",
       {{"order", c.projection.order},
        {"waist", c.projection.waist},
        {"omega0", c.projection.omega0},
        {"oscillator_length", c.projection.oscillator_length}}},
  };
}

}  // namespace

std::string serialize_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

std::vector<std::pair<std::string, std::string>> config_header(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("version", kCodeVersion);
  const json flat = to_json(config).flatten();
  for (const auto& item : flat.items()) {
    std::string key = item.key().substr(1);
    for (char& ch : key)
      if (ch == '/') ch = '.';
    const auto& v = item.value();
    out.emplace_back(key, v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

void apply_figure3(RunConfig& config, char which) {
  const presets::Scenario s = presets::figure3(which);
  config.experiment = s.name;
  config.rate_units = RateUnits::as_printed;
  config.omega_perp = s.params.omega_perp;
  config.kappa = s.params.kappa;
  config.coupling = s.params.coupling;
  config.optics = OpticsOptions{};
  config.schedule = s.schedule;
  config.initial = s.initial;
  config.integration = IntegrationOptions{s.t_end, s.tol, s.samples, presets::kTailFraction};
}

void apply_figure4(RunConfig& config, double plus_fraction) {
  const presets::Scenario s = presets::figure4(plus_fraction);
  config.experiment = s.name;
  config.rate_units = RateUnits::as_printed;
  config.omega_perp = s.params.omega_perp;
  config.kappa = s.params.kappa;
  config.coupling = s.params.coupling;
  config.optics = OpticsOptions{};
  config.optics.splitter = SplitterSpec::from_ratio(plus_fraction);
  config.schedule = s.schedule;
  config.initial = s.initial;
  config.integration = IntegrationOptions{s.t_end, s.tol, s.samples, presets::kTailFraction};
}

}  // namespace vortex
