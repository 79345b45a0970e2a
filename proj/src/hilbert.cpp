#include "blockade/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blockade {

SpaceConfig::SpaceConfig(int n) : fockCutoff(n) {
  if (n < 2) throw std::invalid_argument("fock cutoff must be >= 2, got " + std::to_string(n));
}

std::size_t flatten(AtomLevel l1, AtomLevel l2, int n, const SpaceConfig& cfg) {
  if (n < 0 || n > cfg.fockCutoff)
    throw std::out_of_range("photon number " + std::to_string(n) + " outside [0, " +
                            std::to_string(cfg.fockCutoff) + "]");
  return static_cast<std::size_t>((code(l1) * 3 + code(l2)) * cfg.fock_dim() + n);
}

ProductState unflatten(std::size_t index, const SpaceConfig& cfg) {
  if (index >= cfg.dim()) throw std::out_of_range("flat index " + std::to_string(index) + " out of range");
  const auto fd = static_cast<std::size_t>(cfg.fock_dim());
  const auto atoms = index / fd;
  return {kAtomLevels[atoms / 3], kAtomLevels[atoms % 3], static_cast<int>(index % fd)};
}

std::string_view to_string(CollectiveKind k) {
  switch (k) {
    case CollectiveKind::gg: return "gg";
    case CollectiveKind::ss: return "ss";
    case CollectiveKind::ee: return "ee";
    case CollectiveKind::plus1: return "+1";
    case CollectiveKind::minus1: return "-1";
    case CollectiveKind::plus2: return "+2";
    case CollectiveKind::minus2: return "-2";
    case CollectiveKind::plus3: return "+3";
    case CollectiveKind::minus3: return "-3";
  }
  return "?";
}

int atomic_excitations(CollectiveKind k) noexcept {
  switch (k) {
    case CollectiveKind::gg: return 0;
    case CollectiveKind::plus1:
    case CollectiveKind::minus1:
    case CollectiveKind::plus2:
    case CollectiveKind::minus2: return 1;
    default: return 2;
  }
}

StateVector collective_state(CollectiveKind kind, int n, const SpaceConfig& cfg) {
  using enum AtomLevel;
  StateVector v(cfg.dim());
  auto product = [&](AtomLevel a, AtomLevel b) {
    v[flatten(a, b, n, cfg)] = 1.0;
    return v;
  };
  auto pair = [&](AtomLevel hi, AtomLevel lo, double sign) {
    const double r = 1.0 / std::sqrt(2.0);
    v[flatten(hi, lo, n, cfg)] += r;
    v[flatten(lo, hi, n, cfg)] += sign * r;
    return v;
  };
  switch (kind) {
    case CollectiveKind::gg: return product(g, g);
    case CollectiveKind::ss: return product(s, s);
    case CollectiveKind::ee: return product(e, e);
    case CollectiveKind::plus1: return pair(e, g, +1.0);
    case CollectiveKind::minus1: return pair(e, g, -1.0);
    case CollectiveKind::plus2: return pair(s, g, +1.0);
    case CollectiveKind::minus2: return pair(s, g, -1.0);
    case CollectiveKind::plus3: return pair(e, s, +1.0);
    case CollectiveKind::minus3: return pair(e, s, -1.0);
  }
  throw std::invalid_argument("unknown collective kind");
}

}  // namespace blockade
