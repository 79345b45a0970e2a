#pragma once

// Dense complex matrices and state vectors, plus a CSR sparse matrix for the
// superoperator. Storage is row-major; all heavy loops go through simd::.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "blockade/kernels.hpp"

namespace blockade {

using cplx = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> d);
  static ComplexMatrix diagonal(std::initializer_list<double> d);
  /// Row-wise literal; all rows must have equal length.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);
  /// this += s * o
  ComplexMatrix& add_scaled(cplx s, const ComplexMatrix& o);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
/// [a, b] = ab - ba
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

cplx trace(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
/// max |A - A^dagger|
double hermiticity_error(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim) : data_(dim) {}
  explicit StateVector(std::vector<cplx> v) : data_(std::move(v)) {}
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return data_.size(); }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  double norm() const;
  bool operator==(const StateVector&) const = default;

 private:
  std::vector<cplx> data_;
};

/// <a|b>
cplx inner(const StateVector& a, const StateVector& b);
StateVector operator*(const ComplexMatrix& m, const StateVector& v);
/// |a><b|
ComplexMatrix outer(const StateVector& a, const StateVector& b);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi. Throws DimensionError for non-square input and
/// std::invalid_argument when |A - A^dagger| exceeds hermitianTol * max(1, |A|).
HermitianEigen hermitian_eigen(const ComplexMatrix& a, double hermitianTol = 1e-12);

/// Compressed-sparse-row complex matrix.
class CsrMatrix {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    cplx value;
  };

  CsrMatrix() = default;
  /// Duplicate (row, col) entries are summed; exact zeros are dropped.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  static CsrMatrix from_dense(const ComplexMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  std::span<const std::int64_t> row_ptr() const noexcept { return rowPtr_; }
  std::span<const std::int32_t> col_idx() const noexcept { return colIdx_; }
  std::span<const cplx> values() const noexcept { return values_; }

  simd::CsrView view() const noexcept { return {rows_, rowPtr_, colIdx_, values_}; }
  void multiply(std::span<const cplx> x, std::span<cplx> y) const;
  std::vector<cplx> operator*(std::span<const cplx> x) const;

  /// Entry lookup (binary search within the row); zero when absent.
  cplx at(std::size_t r, std::size_t c) const;
  ComplexMatrix to_dense() const;
  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> rowPtr_{0};
  std::vector<std::int32_t> colIdx_;
  std::vector<cplx> values_;
};

}  // namespace blockade
