#include "blockade/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "blockade/errors.hpp"

namespace blockade {

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DimensionError("DensityMatrix: matrix is not square");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) { return DensityMatrix(outer(psi, psi)); }

void DensityMatrix::hermitize() {
  const std::size_t n = m_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = m_(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
}

double DensityMatrix::hermiticity_error() const { return blockade::hermiticity_error(m_); }

cplx DensityMatrix::trace() const { return blockade::trace(m_); }

double DensityMatrix::min_eigenvalue() const {
  DensityMatrix h = *this;
  h.hermitize();
  return hermitian_eigen(h.m_).values.front();
}

bool DensityMatrix::is_positive(double tol) const {
  // In-place Cholesky of the Hermitian part shifted by tol.
  const std::size_t n = m_.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m_(j, j).real() + tol;
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  DensityMatrix diff(a.matrix() - b.matrix());
  diff.hermitize();
  double s = 0.0;
  for (double v : hermitian_eigen(diff.matrix()).values) s += std::abs(v);
  return 0.5 * s;
}

ComplexMatrix annihilation(int fockCutoff) {
  if (fockCutoff < 1) throw std::invalid_argument("annihilation: cutoff must be >= 1");
  const auto d = static_cast<std::size_t>(fockCutoff + 1);
  ComplexMatrix a(d, d);
  for (std::size_t n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix cavity_annihilation(const SpaceConfig& cfg) {
  return kron(ComplexMatrix::identity(9), annihilation(cfg.fockCutoff));
}

ComplexMatrix atomic_transition(int atom, AtomLevel top, AtomLevel bot, const SpaceConfig& cfg) {
  if (atom != 1 && atom != 2) throw std::invalid_argument("atom index must be 1 or 2, got " + std::to_string(atom));
  ComplexMatrix s(3, 3);
  s(static_cast<std::size_t>(code(top)), static_cast<std::size_t>(code(bot))) = 1.0;
  const auto i3 = ComplexMatrix::identity(3);
  const auto atoms = atom == 1 ? kron(s, i3) : kron(i3, s);
  return kron(atoms, ComplexMatrix::identity(static_cast<std::size_t>(cfg.fock_dim())));
}

cplx expectation(const ComplexMatrix& op, const DensityMatrix& rho) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim())
    throw DimensionError("expectation: operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                         ", density matrix is " + std::to_string(rho.dim()));
  // sum_ij op_ij rho_ji
  const auto& r = rho.matrix();
  cplx t{};
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j) t += op(i, j) * r(j, i);
  return t;
}

}  // namespace blockade
