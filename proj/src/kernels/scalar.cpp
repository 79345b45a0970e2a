#include "blockade/kernels.hpp"

#include <algorithm>

namespace blockade::simd::scalar {

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
  }
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* A, const cplx* B, cplx* C) {
  std::fill(C, C + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    cplx* c = C + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx a = A[i * k + l];
      if (a == cplx{}) continue;
      axpy(a, B + l * n, c, n);
    }
  }
}

void csr_matvec(const CsrView& M, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < M.rows; ++r) {
    double re = 0.0, im = 0.0;
    for (auto p = M.rowPtr[r]; p < M.rowPtr[r + 1]; ++p) {
      const cplx v = M.values[p];
      const cplx xv = x[M.colIdx[p]];
      re += v.real() * xv.real() - v.imag() * xv.imag();
      im += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[r] = {re, im};
  }
}

}  // namespace blockade::simd::scalar
