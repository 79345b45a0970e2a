#pragma once

// Elementary operators of the atom-atom-cavity model embedded in the full
// space (see hilbert.hpp for the index convention).

#include "blockade/density_matrix.hpp"
#include "blockade/hilbert.hpp"
#include "blockade/matrix.hpp"

namespace blockade {

/// (N+1)x(N+1) Fock annihilation operator, <n-1|a|n> = sqrt(n).
ComplexMatrix annihilation(int fockCutoff);

/// Cavity annihilation operator on the full space: I3 (x) I3 (x) a.
ComplexMatrix cavity_annihilation(const SpaceConfig& cfg);

/// sigma^i_{top,bot} = |top><bot| on atom i (1 or 2), identity elsewhere.
/// Throws std::invalid_argument for any other atom index.
ComplexMatrix atomic_transition(int atom, AtomLevel top, AtomLevel bot, const SpaceConfig& cfg);

/// trace(op * rho). Throws DimensionError on mismatch.
cplx expectation(const ComplexMatrix& op, const DensityMatrix& rho);

}  // namespace blockade
