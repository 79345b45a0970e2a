#include "blockade/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace blockade::simd {
namespace {

bool detect_avx2() {
#if defined(BLOCKADE_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("BLOCKADE_SIMD")) {
    if (std::string(env) == "scalar") return Backend::Scalar;
  }
  return detect_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

bool avx2_available() {
  static const bool ok = detect_avx2();
  return ok;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available())
    throw std::runtime_error("AVX2 backend requested but the CPU does not support AVX2+FMA");
  current().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  if (active_backend() == Backend::Avx2)
    avx2::axpy(a, x.data(), y.data(), x.size());
  else
    scalar::axpy(a, x.data(), y.data(), x.size());
}

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dotc: length mismatch");
  return active_backend() == Backend::Avx2 ? avx2::dotc(x.data(), y.data(), x.size())
                                           : scalar::dotc(x.data(), y.data(), x.size());
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* A, const cplx* B, cplx* C) {
  if (active_backend() == Backend::Avx2)
    avx2::gemm(m, k, n, A, B, C);
  else
    scalar::gemm(m, k, n, A, B, C);
}

void csr_matvec(const CsrView& M, std::span<const cplx> x, std::span<cplx> y) {
  if (y.size() != M.rows) throw std::invalid_argument("csr_matvec: output length mismatch");
  if (active_backend() == Backend::Avx2)
    avx2::csr_matvec(M, x.data(), y.data());
  else
    scalar::csr_matvec(M, x.data(), y.data());
}

}  // namespace blockade::simd
