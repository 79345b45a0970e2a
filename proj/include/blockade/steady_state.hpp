#pragma once

// Steady state of the Lindblad generator.
//
// Direct route: one scalar equation of L vec(rho) = 0 (the row with the
// smallest |diagonal|, lowest index on ties) is replaced by the trace row and
// the system is LU-solved. Small systems use a dense partial-pivot LU; larger
// ones a sparse LU (Eigen, COLAMD ordering).
//
// Krylov route: GMRES on the rank-one augmented generator
//   X -> L(X) + Y tr(X),  right-hand side Y = |0><0|,
// left-preconditioned by the exact inverse of X -> -i(Heff X - X Heff^dag),
// Heff = H - (i/2) sum_k r_k C_k^dag C_k, applied through a complex Schur
// factorization of Heff and a triangular Sylvester solve. Falls back to the
// direct route when the preconditioner is singular or the residual contract
// is not met.

#include <cstddef>
#include <vector>

#include "blockade/density_matrix.hpp"
#include "blockade/liouvillian.hpp"
#include "blockade/model.hpp"

namespace blockade {

enum class SolveMethod { Auto, Direct, Krylov };

struct SteadyStateOptions {
  SolveMethod method = SolveMethod::Auto;
  double residualFactor = 1e-9;      // accept when ||L vec rho|| <= factor * ||L||_F
  double negativityTolerance = 1e-8;
  double krylovTolerance = 1e-12;
  int krylovMaxIterations = 400;
  std::size_t denseLimit = 1024;     // largest D^2 handled by the dense LU
};

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;            // ||L vec rho||_2 after Hermitization
  double liouvillianNorm = 0.0;     // ||L||_F
  bool negative = false;            // an eigenvalue below -negativityTolerance
  SolveMethod method = SolveMethod::Direct;
  int iterations = 0;               // GMRES applications; 0 for direct
  double conditionEstimate = 0.0;   // 1-norm estimate of the augmented matrix; 0 when not computed
  std::size_t replacedRow = 0;      // direct route only

  bool within_contract(double factor = 1e-9) const { return residual <= factor * liouvillianNorm; }
};

/// Direct route. Throws SingularSystemError when the augmented system is singular.
SteadyState steady_state(const Liouvillian& l, const SteadyStateOptions& opts = {});

/// Route chosen by opts.method; Auto tries Krylov first.
SteadyState steady_state(const ComplexMatrix& h, const std::vector<CollapseOperator>& cs,
                         const SteadyStateOptions& opts = {});

SteadyState steady_state(const SystemParams& p, const SteadyStateOptions& opts = {});

/// Row replaced by the trace constraint: smallest |L_ii|, lowest index on ties.
std::size_t trace_row(const Liouvillian& l);

/// Smallest singular value of the trace-augmented matrix, by inverse
/// iteration on A^dag A. A value well above zero certifies a unique steady state.
double augmented_min_singular_value(const Liouvillian& l, int iterations = 30);

}  // namespace blockade
