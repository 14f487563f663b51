#include "vortex/optics_network.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "vortex/errors.hpp"
#include "vortex/grid.hpp"

namespace vortex {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kZeroNorm = 1e-30;

void accumulate(OamSuperposition& into, int ell, cplx value) { into.amplitudes[ell] += value; }

}  // namespace

double OamSuperposition::norm2() const {
  double total = 0.0;
  for (const auto& [ell, c] : amplitudes) total += std::norm(c);
  return total;
}

cplx OamSuperposition::amplitude(int ell) const {
  const auto it = amplitudes.find(ell);
  return it == amplitudes.end() ? cplx{} : it->second;
}

SplitterSpec SplitterSpec::balanced() { return from_ratio(0.5); }

SplitterSpec SplitterSpec::from_ratio(double transmitted_fraction) {
  if (!(transmitted_fraction >= 0.0 && transmitted_fraction <= 1.0))
    throw ConfigError("splitter transmitted fraction must lie in [0, 1]");
  return {std::sqrt(1.0 - transmitted_fraction), std::sqrt(transmitted_fraction)};
}

void check_unitary(const SplitterSpec& spec) {
  const double sum = std::norm(spec.r) + std::norm(spec.t);
  if (!(std::abs(sum - 1.0) <= kUnitarityTolerance))
    throw ConfigError("beam splitter is not unitary: |r|^2 + |t|^2 = " + std::to_string(sum));
}

PathOamState apply_beam_splitter(const PathOamState& state, const SplitterSpec& spec) {
  check_unitary(spec);
  const cplx m11 = spec.r, m12 = kI * std::conj(spec.t);
  const cplx m21 = kI * spec.t, m22 = std::conj(spec.r);
  PathOamState out;
  for (const auto& [ell, c] : state.port1.amplitudes) {
    accumulate(out.port1, ell, m11 * c);
    accumulate(out.port2, ell, m21 * c);
  }
  for (const auto& [ell, c] : state.port2.amplitudes) {
    accumulate(out.port1, ell, m12 * c);
    accumulate(out.port2, ell, m22 * c);
  }
  return out;
}

PathOamState apply_dove_prism(const PathOamState& state, Port port) {
  PathOamState out = state;
  OamSuperposition flipped;
  for (const auto& [ell, c] : state.port(port).amplitudes) flipped.amplitudes[-ell] = c;
  out.port(port) = std::move(flipped);
  return out;
}

PathOamState apply_phase(const PathOamState& state, Port port, double phi) {
  PathOamState out = state;
  const cplx factor{std::cos(phi), std::sin(phi)};
  for (auto& [ell, c] : out.port(port).amplitudes) c *= factor;
  return out;
}

PathOamState apply_mirror(const PathOamState& state) { return state; }

PathOamState apply_element(const PathOamState& state, const NetworkElement& e) {
  return std::visit(
      [&state](const auto& el) -> PathOamState {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, element::BeamSplitter>) {
          return apply_beam_splitter(state, el.spec);
        } else if constexpr (std::is_same_v<T, element::DovePrism>) {
          return apply_dove_prism(state, el.port);
        } else if constexpr (std::is_same_v<T, element::PhaseShift>) {
          return apply_phase(state, el.port, el.phi);
        } else {
          return apply_mirror(state);
        }
      },
      e);
}

PathOamState apply_network(const PathOamState& state, const Network& network) {
  PathOamState current = state;
  for (const auto& e : network) current = apply_element(current, e);
  return current;
}

Network mach_zehnder_network(const SplitterSpec& spec, double phi) {
  return {
      element::BeamSplitter{spec},
      element::DovePrism{Port::one},
      element::PhaseShift{Port::two, phi},
      element::Mirror{},
      element::BeamSplitter{SplitterSpec::balanced()},
  };
}

PathOamState mach_zehnder(int ell, const SplitterSpec& spec, double phi) {
  check_unitary(spec);
  PathOamState input;
  input.port1.amplitudes[ell] = 1.0;
  return apply_network(input, mach_zehnder_network(spec, phi));
}

OamSuperposition renormalize_port(const PathOamState& state, Port port) {
  const OamSuperposition& chosen = state.port(port);
  const double n2 = chosen.norm2();
  if (!(n2 > kZeroNorm))
    throw std::domain_error("post-selected port is empty; post-selection probability vanishes");
  const double scale = 1.0 / std::sqrt(n2);
  OamSuperposition out;
  for (const auto& [ell, c] : chosen.amplitudes) out.amplitudes[ell] = c * scale;
  return out;
}

void write_superposition_csv(std::ostream& os, const OamSuperposition& state,
                             const std::vector<std::pair<std::string, std::string>>& header) {
  for (const auto& [key, value] : header) os << "# " << key << " = " << value << '\n';
  os << "ell,re,im\n";
  for (const auto& [ell, c] : state.amplitudes)
    os << ell << ',' << format_number(c.real()) << ',' << format_number(c.imag()) << '\n';
}

}  // namespace vortex
