#include <cmath>
#include <random>

#include "blockade/density_matrix.hpp"
#include "blockade/errors.hpp"
#include "blockade/operators.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace blockade;
using L = AtomLevel;

TEST_CASE("kron") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)) == ComplexMatrix::identity(6));
  CHECK(kron(ComplexMatrix::diagonal({1, 2}), ComplexMatrix::diagonal({3, 4})) == ComplexMatrix::diagonal({3, 4, 6, 8}));
  std::mt19937_64 rng(1);
  const auto a = testutil::random_matrix(2, 2, rng), b = testutil::random_matrix(2, 2, rng),
             c = testutil::random_matrix(2, 2, rng);
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-14);
  const auto r = testutil::random_matrix(2, 3, rng), s = testutil::random_matrix(4, 5, rng);
  const auto k = kron(r, s);
  CHECK(k.rows() == 8);
  CHECK(k.cols() == 15);
  CHECK(k(1 * 4 + 3, 2 * 5 + 1) == r(1, 2) * s(3, 1));
}

TEST_CASE("dagger and products") {
  std::mt19937_64 rng(2);
  const auto a = testutil::random_matrix(4, 3, rng), b = testutil::random_matrix(3, 5, rng);
  CHECK(dagger(dagger(a)) == a);
  CHECK(max_abs_diff(dagger(a * b), dagger(b) * dagger(a)) <= 1e-14);
  CHECK_THROWS_AS(a * a, DimensionError);
}

TEST_CASE("annihilation operator") {
  CHECK(annihilation(1) == ComplexMatrix::from_rows({{0, 1}, {0, 0}}));
  const auto a = annihilation(5);
  const auto n = dagger(a) * a;
  for (int i = 0; i <= 5; ++i) CHECK(n(i, i).real() == doctest::Approx(i).epsilon(1e-15));
  CHECK(max_abs_diff(n, ComplexMatrix::diagonal({0, 1, 2, 3, 4, 5})) <= 1e-14);
  // truncation artifact: [a, a^dag] = I - (N+1)|N><N|
  auto expected = ComplexMatrix::identity(6);
  expected(5, 5) -= 6.0;
  CHECK(max_abs_diff(commutator(a, dagger(a)), expected) <= 1e-14);
  CHECK_THROWS_AS(annihilation(0), std::invalid_argument);
}

TEST_CASE("atomic transition operators") {
  const SpaceConfig cfg(3);
  const auto id = ComplexMatrix::identity(cfg.dim());
  for (int atom : {1, 2}) {
    const auto sum = atomic_transition(atom, L::e, L::e, cfg) + atomic_transition(atom, L::s, L::s, cfg) +
                     atomic_transition(atom, L::g, L::g, cfg);
    CHECK(sum == id);
  }
  const auto raised = atomic_transition(1, L::e, L::g, cfg) * StateVector::basis(cfg.dim(), flatten(L::g, L::g, 0, cfg));
  CHECK(raised == StateVector::basis(cfg.dim(), flatten(L::e, L::g, 0, cfg)));
  CHECK(max_abs(commutator(atomic_transition(1, L::e, L::g, cfg), atomic_transition(2, L::g, L::e, cfg))) == 0.0);
  CHECK(max_abs(commutator(atomic_transition(1, L::e, L::s, cfg), cavity_annihilation(cfg))) == 0.0);
  CHECK_THROWS_AS(atomic_transition(3, L::e, L::g, cfg), std::invalid_argument);
}

TEST_CASE("expectation values") {
  const SpaceConfig cfg(4);
  const auto a = cavity_annihilation(cfg);
  const auto n = dagger(a) * a;
  const auto vac = DensityMatrix::pure(StateVector::basis(cfg.dim(), flatten(L::g, L::g, 0, cfg)));
  const auto two = DensityMatrix::pure(StateVector::basis(cfg.dim(), flatten(L::g, L::g, 2, cfg)));
  CHECK(std::abs(expectation(ComplexMatrix::identity(cfg.dim()), vac) - 1.0) < 1e-15);
  CHECK(std::abs(expectation(n, vac)) < 1e-15);
  CHECK(std::abs(expectation(n, two) - 2.0) < 1e-14);
  CHECK_THROWS_AS(expectation(ComplexMatrix::identity(3), vac), DimensionError);

  std::mt19937_64 rng(4);
  const auto h = testutil::random_hermitian(cfg.dim(), rng);
  StateVector psi(cfg.dim());
  std::normal_distribution<double> d;
  for (auto& v : psi.data()) v = {d(rng), d(rng)};
  const double nrm = psi.norm();
  for (auto& v : psi.data()) v /= nrm;
  CHECK(std::abs(expectation(h, DensityMatrix::pure(psi)).imag()) <= 1e-10);
}

TEST_CASE("hermitian eigensolver") {
  auto e = hermitian_eigen(ComplexMatrix::diagonal({3, 1, 2}));
  CHECK(e.values == std::vector<double>{1, 2, 3});

  const double g = 2.5;
  e = hermitian_eigen(ComplexMatrix::from_rows({{0, g}, {g, 0}}));
  CHECK(e.values[0] == doctest::Approx(-g));
  CHECK(e.values[1] == doctest::Approx(g));

  std::mt19937_64 rng(5);
  for (std::size_t d : {1u, 5u, 9u, 40u}) {
    const auto a = testutil::random_hermitian(d, rng);
    e = hermitian_eigen(a);
    const double scale = std::max(1.0, max_abs(a));
    for (std::size_t k = 0; k < d; ++k) {
      StateVector v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = e.vectors(i, k);
      const auto av = a * v;
      for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(av[i] - e.values[k] * v[i]) <= 1e-10 * scale);
      if (k > 0) CHECK(e.values[k] >= e.values[k - 1]);
    }
    CHECK(max_abs_diff(dagger(e.vectors) * e.vectors, ComplexMatrix::identity(d)) <= 1e-10);
  }
  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix::from_rows({{0, 1}, {0, 0}})), std::invalid_argument);
  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("density matrix helpers") {
  const auto up = DensityMatrix::pure(StateVector(std::vector<cplx>{1, 0}));
  const auto down = DensityMatrix::pure(StateVector(std::vector<cplx>{0, 1}));
  CHECK(trace_distance(up, down) == doctest::Approx(1.0));
  CHECK(trace_distance(up, up) == doctest::Approx(0.0));
  CHECK(up.is_positive());
  CHECK_FALSE(DensityMatrix(ComplexMatrix::diagonal({1.1, -0.1})).is_positive());
  CHECK(DensityMatrix(ComplexMatrix::diagonal({1.1, -0.1})).min_eigenvalue() == doctest::Approx(-0.1));
  DensityMatrix skew(ComplexMatrix::from_rows({{0.5, {0, 1}}, {0, 0.5}}));
  CHECK(skew.hermiticity_error() > 0.5);
  skew.hermitize();
  CHECK(skew.hermiticity_error() == 0.0);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("CSR storage") {
  std::mt19937_64 rng(6);
  auto m = testutil::random_matrix(5, 4, rng);
  m(1, 2) = 0;
  const auto csr = CsrMatrix::from_dense(m);
  CHECK(csr.nonzeros() == 19);
  CHECK(csr.to_dense() == m);
  CHECK(csr.at(1, 2) == cplx(0));
  CHECK(csr.at(3, 1) == m(3, 1));
  const auto t = CsrMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {0, 1, 2.0}, {1, 0, 0.0}});
  CHECK(t.nonzeros() == 1);
  CHECK(t.at(0, 1) == cplx(3.0));
}
