#pragma once

// Lindblad generator in column-stacked form: vec(X)[c*D + r] = X(r, c), so
// vec(A X B) = (B^T (x) A) vec(X) and
//   L = -i(I (x) H - H^T (x) I)
//       + sum_k r_k [conj(C_k) (x) C_k - 1/2 I (x) C_k^dag C_k - 1/2 (C_k^dag C_k)^T (x) I].

#include <cstddef>
#include <span>
#include <vector>

#include "blockade/matrix.hpp"
#include "blockade/model.hpp"

namespace blockade {

constexpr std::size_t vec_index(std::size_t row, std::size_t col, std::size_t dim) noexcept { return col * dim + row; }

std::vector<cplx> vec(const ComplexMatrix& x);
/// Throws DimensionError unless v.size() == dim * dim.
ComplexMatrix unvec(std::span<const cplx> v, std::size_t dim);

class Liouvillian {
 public:
  Liouvillian(std::size_t hilbertDim, CsrMatrix m);

  std::size_t hilbert_dim() const noexcept { return dim_; }
  const CsrMatrix& matrix() const noexcept { return m_; }
  double frobenius_norm() const noexcept { return norm_; }

  /// y = L x on vectorized operators.
  void apply(std::span<const cplx> x, std::span<cplx> y) const { m_.multiply(x, y); }
  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  std::size_t dim_;
  CsrMatrix m_;
  double norm_;
};

/// Throws DimensionError on shape mismatch and std::invalid_argument when H is
/// not Hermitian or a rate is negative.
Liouvillian build_liouvillian(const ComplexMatrix& h, const std::vector<CollapseOperator>& cs);

}  // namespace blockade
