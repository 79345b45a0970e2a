#pragma once

// Rotating-frame Hamiltonian and dissipators of two Lambda atoms in a driven
// cavity. hbar = 1; every rate and frequency is in units of kappa.

#include <memory>
#include <string>
#include <vector>

#include "blockade/hilbert.hpp"
#include "blockade/matrix.hpp"

namespace blockade {

struct SystemParams {
  double delta = 0.0;   // common detuning of cavity, e and s levels
  double g = 20.0;      // atom-field coupling at an antinode
  double phiZ = 0.0;    // placement phase between the atoms
  double J = 0.0;       // dipole-dipole exchange
  double omegaP = 0.2;  // pump on g<->e
  double omegaD = 0.0;  // drive on s<->e
  double kappa = 1.0;
  double gammaGE = 0.01;
  double gammaSE = 0.01;
  double gammaGS = 1.0;
  int fockCutoff = 7;

  /// Throws DomainError naming the first offending field.
  void validate() const;
  SpaceConfig space() const { return SpaceConfig(fockCutoff); }
  bool operator==(const SystemParams&) const = default;
};

struct Couplings {
  double g1;
  double g2;
  double plus() const noexcept { return g1 + g2; }
  double minus() const noexcept { return g1 - g2; }
};

/// g1 = g (atom 1 at an antinode), g2 = g cos(phiZ).
Couplings coupling_strengths(const SystemParams& p);

struct CollapseOperator {
  double rate;
  ComplexMatrix op;
};

/// Parameter-independent pieces of H for one cutoff; H is a linear
/// combination of these. Shared and immutable once built.
struct OperatorBasis {
  SpaceConfig space;
  ComplexMatrix a;                  // cavity annihilation
  ComplexMatrix excitations;        // a^dag a + sum_i (sigma_ee + sigma_ss)
  ComplexMatrix cavityCoupling[2];  // a sigma^i_eg + h.c.
  ComplexMatrix exchange;           // DDI term without J
  ComplexMatrix drive;              // sum_i sigma^i_es + h.c.
  ComplexMatrix pump;               // sum_i sigma^i_eg + h.c.
  ComplexMatrix lowering[2][3];     // sigma^i_ge, sigma^i_se, sigma^i_gs

  explicit OperatorBasis(const SpaceConfig& cfg);
};

/// Cached per cutoff; thread-safe.
std::shared_ptr<const OperatorBasis> operator_basis(int fockCutoff);

ComplexMatrix build_hamiltonian(const SystemParams& p);

/// (kappa, a) followed by (gammaGE, sigma_ge), (gammaSE, sigma_se),
/// (gammaGS, sigma_gs) for atom 1 then atom 2. Zero-rate channels are omitted.
std::vector<CollapseOperator> collapse_operators(const SystemParams& p);

/// Total excitation number a^dag a + sum_i (sigma^i_ee + sigma^i_ss).
ComplexMatrix excitation_number(const SpaceConfig& cfg);

/// Settable parameter names shared by sweeps and config files.
/// Throws std::invalid_argument for an unknown name.
void set_param(SystemParams& p, const std::string& name, double value);
double get_param(const SystemParams& p, const std::string& name);

}  // namespace blockade
