#include "blockade/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "blockade/errors.hpp"

namespace blockade {
namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> d) {
  std::vector<cplx> v(d.begin(), d.end());
  return diagonal(std::span<const cplx>(v));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    std::copy(row.begin(), row.end(), m.row(i++).begin());
  }
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(cplx s, const ComplexMatrix& o) {
  require_same_shape(*this, o, "add_scaled");
  simd::axpy(s, o.data_, data_);
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  ComplexMatrix c(a.rows(), b.cols());
  simd::gemm(a.rows(), a.cols(), b.cols(), a.data().data(), b.data().data(), c.data().data());
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& v : out.data()) v = std::conj(v);
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

cplx trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("trace: matrix is not square");
  cplx t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double hermiticity_error(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("hermiticity_error: matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

bool all_finite(const ComplexMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("StateVector::basis: index out of range");
  StateVector v(dim);
  v[index] = 1.0;
  return v;
}

double StateVector::norm() const { return std::sqrt(simd::dotc(data_, data_).real()); }

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner: dimension mismatch");
  return simd::dotc(a.data(), b.data());
}

StateVector operator*(const ComplexMatrix& m, const StateVector& v) {
  if (m.cols() != v.dim()) throw DimensionError("matvec: dimension mismatch");
  StateVector out(m.rows());
  simd::gemm(m.rows(), m.cols(), 1, m.data().data(), v.data().data(), out.data().data());
  return out;
}

ComplexMatrix outer(const StateVector& a, const StateVector& b) {
  ComplexMatrix m(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& input, double hermitianTol) {
  if (!input.is_square()) throw DimensionError("hermitian_eigen: matrix is not square");
  const std::size_t n = input.rows();
  const double scale = std::max(1.0, max_abs(input));
  if (hermiticity_error(input) > hermitianTol * scale)
    throw std::invalid_argument("hermitian_eigen: input is not Hermitian");

  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };
  const double target = 1e-15 * std::max(frobenius_norm(a), 1e-300);

  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b == 0.0) continue;
        const cplx phase = a(p, q) / b;  // e^{i phi}
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * b);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) plane.
        const cplx em = std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * em * akq;
          a(k, q) = s * akp + c * em * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = app - t * b;
        a(q, q) = aqq + t * b;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * em * vkq;
          v(k, q) = s * vkp + c * em * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.rowPtr_.assign(rows + 1, 0);
  m.colIdx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t i = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (i < triplets.size() && triplets[i].row == r) {
      const std::size_t c = triplets[i].col;
      if (c >= cols) throw DimensionError("CsrMatrix: column index out of range");
      cplx sum{};
      while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) sum += triplets[i++].value;
      if (sum != cplx{}) {
        m.colIdx_.push_back(static_cast<std::int32_t>(c));
        m.values_.push_back(sum);
      }
    }
    m.rowPtr_[r + 1] = static_cast<std::int64_t>(m.values_.size());
  }
  if (i != triplets.size()) throw DimensionError("CsrMatrix: row index out of range");
  return m;
}

CsrMatrix CsrMatrix::from_dense(const ComplexMatrix& d) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (d(i, j) != cplx{}) t.push_back({i, j, d(i, j)});
  return from_triplets(d.rows(), d.cols(), std::move(t));
}

void CsrMatrix::multiply(std::span<const cplx> x, std::span<cplx> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw DimensionError("CsrMatrix::multiply: dimension mismatch");
  simd::csr_matvec(view(), x, y);
}

std::vector<cplx> CsrMatrix::operator*(std::span<const cplx> x) const {
  std::vector<cplx> y(rows_);
  multiply(x, y);
  return y;
}

cplx CsrMatrix::at(std::size_t r, std::size_t c) const {
  const auto* begin = colIdx_.data() + rowPtr_[r];
  const auto* end = colIdx_.data() + rowPtr_[r + 1];
  const auto* it = std::lower_bound(begin, end, static_cast<std::int32_t>(c));
  if (it == end || *it != static_cast<std::int32_t>(c)) return {};
  return values_[static_cast<std::size_t>(it - colIdx_.data())];
}

ComplexMatrix CsrMatrix::to_dense() const {
  ComplexMatrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (auto p = rowPtr_[r]; p < rowPtr_[r + 1]; ++p) d(r, static_cast<std::size_t>(colIdx_[p])) = values_[p];
  return d;
}

double CsrMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace blockade
