#include <random>
#include <tuple>
#include <vector>

#include "blockade/kernels.hpp"
#include "blockade/matrix.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace blockade;
namespace sm = blockade::simd;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar and AVX2 kernels agree") {
  if (!sm::avx2_available()) {
    MESSAGE("AVX2 not available on this host; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(7);
  // odd lengths hit the remainder loops
  for (std::size_t n : {0, 1, 2, 3, 7, 64, 129, 1001}) {
    const auto x = random_vec(n, rng);
    auto y1 = random_vec(n, rng), y2 = y1;
    const cplx a(0.3, -1.7);
    sm::scalar::axpy(a, x.data(), y1.data(), n);
    sm::avx2::axpy(a, x.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) <= 1e-14);
    const cplx d1 = sm::scalar::dotc(x.data(), y1.data(), n), d2 = sm::avx2::dotc(x.data(), y1.data(), n);
    CHECK(std::abs(d1 - d2) <= 1e-12 * (1.0 + std::abs(d1)));
  }
  using Shape = std::tuple<std::size_t, std::size_t, std::size_t>;
  for (auto [m, k, n] : std::initializer_list<Shape>{{1, 1, 1}, {3, 5, 7}, {9, 9, 9}, {17, 4, 33}, {72, 72, 72}}) {
    const auto a = random_vec(m * k, rng), b = random_vec(k * n, rng);
    std::vector<cplx> c1(m * n), c2(m * n);
    sm::scalar::gemm(m, k, n, a.data(), b.data(), c1.data());
    sm::avx2::gemm(m, k, n, a.data(), b.data(), c2.data());
    CHECK(max_diff(c1, c2) <= 1e-12);
  }
  const auto dense = testutil::random_matrix(37, 37, rng);
  ComplexMatrix sparse = dense;
  for (std::size_t i = 0; i < 37; ++i)
    for (std::size_t j = 0; j < 37; ++j)
      if ((i * 7 + j * 3) % 5) sparse(i, j) = 0;
  const auto csr = CsrMatrix::from_dense(sparse);
  const auto x = random_vec(37, rng);
  std::vector<cplx> y1(37), y2(37);
  sm::scalar::csr_matvec(csr.view(), x.data(), y1.data());
  sm::avx2::csr_matvec(csr.view(), x.data(), y2.data());
  CHECK(max_diff(y1, y2) <= 1e-13);
}

TEST_CASE("backend selection round-trips and results do not depend on it") {
  const auto before = sm::active_backend();
  std::mt19937_64 rng(11);
  const auto a = testutil::random_matrix(20, 13, rng), b = testutil::random_matrix(13, 9, rng);
  sm::set_backend(sm::Backend::Scalar);
  CHECK(sm::active_backend() == sm::Backend::Scalar);
  const auto ref = a * b;
  if (sm::avx2_available()) {
    sm::set_backend(sm::Backend::Avx2);
    CHECK(max_abs_diff(a * b, ref) <= 1e-12);
  } else {
    CHECK_THROWS_AS(sm::set_backend(sm::Backend::Avx2), std::runtime_error);
  }
  sm::set_backend(before);
  CHECK(sm::backend_name(sm::Backend::Scalar) != sm::backend_name(sm::Backend::Avx2));
}

TEST_CASE("gemm matches a naive triple loop") {
  std::mt19937_64 rng(3);
  const auto a = testutil::random_matrix(6, 4, rng), b = testutil::random_matrix(4, 5, rng);
  const auto c = a * b;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      cplx s = 0;
      for (std::size_t k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      CHECK(std::abs(c(i, j) - s) <= 1e-13);
    }
}
