#pragma once

#include <cstddef>

#include "blockade/matrix.hpp"

namespace blockade {

/// Density operator on the composite space. Holds any square matrix; the
/// physical invariants (Hermitian, unit trace, positive) are checked on demand
/// rather than enforced, since solver output satisfies them only to tolerance.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix pure(const StateVector& psi);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// rho <- (rho + rho^dagger) / 2
  void hermitize();

  double hermiticity_error() const;
  cplx trace() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  /// True when rho + tol * I admits a Cholesky factorization, i.e. no eigenvalue below -tol.
  bool is_positive(double tol = 1e-8) const;

 private:
  ComplexMatrix m_;
};

/// (1/2) sum |eig(a - b)|
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace blockade
