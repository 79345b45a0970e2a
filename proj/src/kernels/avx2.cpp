// AVX2/FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may be called unless avx2_available() is true.

#include "blockade/kernels.hpp"

#include <algorithm>

#if defined(BLOCKADE_HAVE_AVX2_TU) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace blockade::simd::avx2 {
namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// (ar + i ai) * x for two packed complex values in x.
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d x) {
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, xs));
}

// v * x, both holding two packed complex values.
inline __m256d cmul(__m256d v, __m256d x) {
  const __m256d vr = _mm256_movedup_pd(v);
  const __m256d vi = _mm256_permute_pd(v, 0b1111);
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(vr, x, _mm256_mul_pd(vi, xs));
}

}  // namespace

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d y0 = _mm256_loadu_pd(dp(y + i));
    __m256d y1 = _mm256_loadu_pd(dp(y + i + 2));
    y0 = _mm256_add_pd(y0, cmul_bcast(ar, ai, _mm256_loadu_pd(dp(x + i))));
    y1 = _mm256_add_pd(y1, cmul_bcast(ar, ai, _mm256_loadu_pd(dp(x + i + 2))));
    _mm256_storeu_pd(dp(y + i), y0);
    _mm256_storeu_pd(dp(y + i + 2), y1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d y0 = _mm256_loadu_pd(dp(y + i));
    y0 = _mm256_add_pd(y0, cmul_bcast(ar, ai, _mm256_loadu_pd(dp(x + i))));
    _mm256_storeu_pd(dp(y + i), y0);
  }
  if (i < n) y[i] += a * x[i];
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  __m256d same = _mm256_setzero_pd();   // (xr*yr, xi*yi)
  __m256d cross = _mm256_setzero_pd();  // (xr*yi, xi*yr)
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4], c[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(c, cross);
  double re = (s[0] + s[1]) + (s[2] + s[3]);
  double im = (c[0] - c[1]) + (c[2] - c[3]);
  if (i < n) {
    const cplx t = std::conj(x[i]) * y[i];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* A, const cplx* B, cplx* C) {
  std::fill(C, C + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    cplx* c = C + i * n;
    const cplx* a = A + i * k;
    std::size_t l = 0;
    // Four rows of B per pass keeps the C row in registers/L1 for longer.
    for (; l + 4 <= k; l += 4) {
      const __m256d ar0 = _mm256_set1_pd(a[l].real()), ai0 = _mm256_set1_pd(a[l].imag());
      const __m256d ar1 = _mm256_set1_pd(a[l + 1].real()), ai1 = _mm256_set1_pd(a[l + 1].imag());
      const __m256d ar2 = _mm256_set1_pd(a[l + 2].real()), ai2 = _mm256_set1_pd(a[l + 2].imag());
      const __m256d ar3 = _mm256_set1_pd(a[l + 3].real()), ai3 = _mm256_set1_pd(a[l + 3].imag());
      const cplx* b0 = B + l * n;
      const cplx* b1 = b0 + n;
      const cplx* b2 = b1 + n;
      const cplx* b3 = b2 + n;
      std::size_t j = 0;
      for (; j + 2 <= n; j += 2) {
        __m256d acc = _mm256_loadu_pd(dp(c + j));
        acc = _mm256_add_pd(acc, cmul_bcast(ar0, ai0, _mm256_loadu_pd(dp(b0 + j))));
        acc = _mm256_add_pd(acc, cmul_bcast(ar1, ai1, _mm256_loadu_pd(dp(b1 + j))));
        acc = _mm256_add_pd(acc, cmul_bcast(ar2, ai2, _mm256_loadu_pd(dp(b2 + j))));
        acc = _mm256_add_pd(acc, cmul_bcast(ar3, ai3, _mm256_loadu_pd(dp(b3 + j))));
        _mm256_storeu_pd(dp(c + j), acc);
      }
      if (j < n) c[j] += a[l] * b0[j] + a[l + 1] * b1[j] + a[l + 2] * b2[j] + a[l + 3] * b3[j];
    }
    for (; l < k; ++l) axpy(a[l], B + l * n, c, n);
  }
}

void csr_matvec(const CsrView& M, const cplx* x, cplx* y) {
  const auto* rp = M.rowPtr.data();
  const auto* ci = M.colIdx.data();
  const cplx* v = M.values.data();
  for (std::size_t r = 0; r < M.rows; ++r) {
    __m256d acc = _mm256_setzero_pd();
    auto p = rp[r];
    const auto end = rp[r + 1];
    for (; p + 2 <= end; p += 2) {
      const __m256d vv = _mm256_loadu_pd(dp(v + p));
      const __m256d xv = _mm256_loadu2_m128d(dp(x + ci[p + 1]), dp(x + ci[p]));
      acc = _mm256_add_pd(acc, cmul(vv, xv));
    }
    __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    alignas(16) double out[2];
    _mm_store_pd(out, sum);
    cplx res{out[0], out[1]};
    if (p < end) res += v[p] * x[ci[p]];
    y[r] = res;
  }
}

}  // namespace blockade::simd::avx2

#else

// Non-x86 build: the AVX2 entry points forward to the reference code so the
// symbols exist; dispatch never selects them because avx2_available() is false.
namespace blockade::simd::avx2 {
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) { scalar::axpy(a, x, y, n); }
cplx dotc(const cplx* x, const cplx* y, std::size_t n) { return scalar::dotc(x, y, n); }
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* A, const cplx* B, cplx* C) {
  scalar::gemm(m, k, n, A, B, C);
}
void csr_matvec(const CsrView& M, const cplx* x, cplx* y) { scalar::csr_matvec(M, x, y); }
}  // namespace blockade::simd::avx2

#endif
