#pragma once

// Composite space atom1 (x) atom2 (x) Fock{0..N}.
// Flat index = (code(l1) * 3 + code(l2)) * (N + 1) + n, so atom 1 is the
// slowest-varying factor and the photon number the fastest. Every operator in
// the library is built against this ordering.

#include <array>
#include <cstddef>
#include <string_view>

#include "blockade/matrix.hpp"

namespace blockade {

enum class AtomLevel : int { g = 0, s = 1, e = 2 };

constexpr int code(AtomLevel l) noexcept { return static_cast<int>(l); }
constexpr std::array<AtomLevel, 3> kAtomLevels{AtomLevel::g, AtomLevel::s, AtomLevel::e};

struct SpaceConfig {
  int fockCutoff = 7;

  /// Throws std::invalid_argument when N < 2.
  explicit SpaceConfig(int n = 7);
  int fock_dim() const noexcept { return fockCutoff + 1; }
  std::size_t dim() const noexcept { return 9 * static_cast<std::size_t>(fockCutoff + 1); }
};

struct ProductState {
  AtomLevel atom1;
  AtomLevel atom2;
  int photons;
  bool operator==(const ProductState&) const = default;
};

/// Throws std::out_of_range unless 0 <= n <= N.
std::size_t flatten(AtomLevel l1, AtomLevel l2, int n, const SpaceConfig& cfg);
ProductState unflatten(std::size_t index, const SpaceConfig& cfg);

/// Symmetric (+) / antisymmetric (-) two-atom combinations:
///   plus1/minus1: (|e,g> +- |g,e>)/sqrt2
///   plus2/minus2: (|s,g> +- |g,s>)/sqrt2
///   plus3/minus3: (|e,s> +- |s,e>)/sqrt2, the doubly excited pair
/// gg, ss, ee are product states.
enum class CollectiveKind { gg, ss, ee, plus1, minus1, plus2, minus2, plus3, minus3 };

constexpr std::array<CollectiveKind, 9> kCollectiveKinds{
    CollectiveKind::gg,    CollectiveKind::ss,     CollectiveKind::ee,
    CollectiveKind::plus1, CollectiveKind::minus1, CollectiveKind::plus2,
    CollectiveKind::minus2, CollectiveKind::plus3, CollectiveKind::minus3};

std::string_view to_string(CollectiveKind k);

/// |kind, n> as a unit vector in the full space. Throws std::out_of_range for n outside [0, N].
StateVector collective_state(CollectiveKind kind, int n, const SpaceConfig& cfg);

/// Atomic excitation count of a collective kind (s and e both count as one).
int atomic_excitations(CollectiveKind kind) noexcept;

}  // namespace blockade
