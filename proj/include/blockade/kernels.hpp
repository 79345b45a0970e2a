#pragma once

// Complex double-precision inner loops shared by the dense operator algebra,
// the Liouvillian matvec, the LU factorizations and the RK4 integrator.
//
// Every kernel has a portable scalar reference implementation and an AVX2/FMA
// variant. The variant is chosen once at startup from CPUID; setting the
// environment variable BLOCKADE_SIMD=scalar forces the reference path.
// Both paths are compared against each other in tests/unit/test_kernels.cpp.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace blockade::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// Read-only view of a compressed-sparse-row complex matrix.
struct CsrView {
  std::size_t rows = 0;
  std::span<const std::int64_t> rowPtr;  // rows + 1 entries
  std::span<const std::int32_t> colIdx;
  std::span<const cplx> values;
};

// y += a * x
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y);

// sum_i conj(x_i) * y_i
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);

// C (m x n) = A (m x k) * B (k x n), all row-major and contiguous. C must not alias A or B.
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* A, const cplx* B, cplx* C);

// y = M * x
void csr_matvec(const CsrView& M, std::span<const cplx> x, std::span<cplx> y);

Backend active_backend();
void set_backend(Backend b);  // throws std::runtime_error if AVX2 is requested but unavailable
bool avx2_available();
std::string_view backend_name(Backend b);

// Direct access to each implementation, for equivalence tests and benchmarks.
namespace scalar {
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);
cplx dotc(const cplx* x, const cplx* y, std::size_t n);
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* A, const cplx* B, cplx* C);
void csr_matvec(const CsrView& M, const cplx* x, cplx* y);
}  // namespace scalar

namespace avx2 {
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);
cplx dotc(const cplx* x, const cplx* y, std::size_t n);
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* A, const cplx* B, cplx* C);
void csr_matvec(const CsrView& M, const cplx* x, cplx* y);
}  // namespace avx2

}  // namespace blockade::simd
