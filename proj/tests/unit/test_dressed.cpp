#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

#include "blockade/dressed.hpp"
#include "blockade/errors.hpp"
#include "doctest.h"

using namespace blockade;

namespace {

const double kR2 = std::sqrt(2.0);

DressedParams make(double g, double j, double od, double phi = 0.0, double wc = 0.0) {
  DressedParams p;
  p.g = g;
  p.J = j;
  p.omegaD = od;
  p.phiZ = phi;
  p.omegaC = wc;
  return p;
}

}  // namespace

TEST_CASE("one-photon matrix") {
  const double g = 20;
  auto m = one_photon_matrix(make(g, 0, 0));
  CHECK(hermiticity_error(m) == 0.0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      const bool coupled = (i == 0 && j == 1) || (i == 1 && j == 0);
      if (i != j) CHECK(std::abs(m(i, j) - (coupled ? kR2 * g : 0.0)) < 1e-13);
    }
  m = one_photon_matrix(make(g, 3, 4, 1.1, 2));
  CHECK(m(1, 1) == cplx(5));
  CHECK(m(2, 2) == cplx(-1));
  CHECK(m(1, 3) == cplx(4));
  CHECK(std::abs(m(0, 2) - g * (1 - std::cos(1.1)) / kR2) < 1e-13);

  const auto e = hermitian_eigen(one_photon_matrix(make(g, 0, 0))).values;
  const std::vector<double> expected{-kR2 * g, 0, 0, 0, kR2 * g};
  for (std::size_t k = 0; k < 5; ++k) CHECK(e[k] == doctest::Approx(expected[k]).epsilon(1e-12));
}

TEST_CASE("two-photon matrix") {
  const auto p = make(13, 2, 5, 0.8);
  const double gp = 13 * (1 + std::cos(0.8)), gm = 13 * (1 - std::cos(0.8));
  const auto m = two_photon_matrix(p);
  CHECK(hermiticity_error(m) == 0.0);
  CHECK(std::abs(m(0, 1) - gp) < 1e-13);
  CHECK(std::abs(m(0, 2) - gm) < 1e-13);
  CHECK(std::abs(m(1, 8) - gp / kR2) < 1e-13);
  CHECK(std::abs(m(2, 8) + gm / kR2) < 1e-13);
  CHECK(m(6, 6) == cplx(-2));
  CHECK(m(5, 7) == cplx(5));
  const auto exact = two_photon_matrix_exact(p);
  CHECK(std::abs(exact(5, 7) - kR2 * 5.0) < 1e-13);
  CHECK(std::abs(exact(8, 5) - kR2 * 5.0) < 1e-13);

  const double g = 20;
  const auto e = hermitian_eigen(two_photon_matrix(make(g, 0, 0))).values;
  const double s6 = std::sqrt(6.0) * g;
  // +-g appears twice: |+2,1> pairs with |+3,0> and |-2,1> with |-3,0>
  const std::vector<double> expected{-s6, -g, -g, 0, 0, 0, g, g, s6};
  for (std::size_t k = 0; k < 9; ++k) CHECK(std::abs(e[k] - expected[k]) < 1e-10);
}

TEST_CASE("projection of the full Hamiltonian") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 30), ph(0, 2 * std::numbers::pi);
  for (int k = 0; k < 8; ++k) {
    const auto p = make(u(rng), u(rng), u(rng), ph(rng), u(rng) - 15);
    CHECK(max_abs_diff(project_full_hamiltonian(p, Manifold::One), one_photon_matrix(p)) <= 1e-12);
    auto q = p;
    q.phiZ = 0;
    CHECK(max_abs_diff(project_full_hamiltonian(q, Manifold::Two), two_photon_matrix_exact(q)) <= 1e-12);
  }
  // bare energies when every coupling vanishes
  const auto bare = project_full_hamiltonian(make(0, 0, 0, 0, 1.5), Manifold::Two);
  CHECK(max_abs_diff(bare, 3.0 * ComplexMatrix::identity(9)) <= 1e-14);
  CHECK(collective_basis(Manifold::One).size() == 5);
  CHECK(collective_basis(Manifold::Two).size() == 9);
}

TEST_CASE("Table I closed forms") {
  auto v = table1_eigenvalues(make(20, 0, 20));
  const double r = std::sqrt(1200.0);
  const std::array<double, 5> ref{-r, -20, 0, 20, r};
  for (std::size_t k = 0; k < 5; ++k) CHECK(v[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  CHECK(r == doctest::Approx(34.641).epsilon(1e-5));

  v = table1_eigenvalues(make(20, 20, 4));
  CHECK(v[4] == doctest::Approx(10 + std::sqrt(916.0)).epsilon(1e-14));
  CHECK(std::abs(v[4] - 40.266) < 1e-3);
  v = table1_eigenvalues(make(7, 0, 0));
  CHECK(v[0] == doctest::Approx(-kR2 * 7));
  CHECK(v[2] == 0.0);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 30);
  for (int k = 0; k < 50; ++k) CHECK(compare_table1(make(u(rng), u(rng), u(rng), 0, u(rng))).maxAbsError <= 1e-9);
  CHECK_THROWS_AS(table1_eigenvalues(make(20, 0, 0, 0.1)), DomainError);
}

TEST_CASE("Table II closed forms") {
  const double g = 20;
  const auto p = make(g, 0, 0);
  CHECK(eta(g) == doctest::Approx(1.87 * std::sqrt(1.714) * g));
  CHECK(eta(g) == doctest::Approx(2.448 * g).epsilon(1e-3));
  CHECK(chi(g) == doctest::Approx(1.87 * std::sqrt(0.286) * g));
  const auto fit = table2_fit_rows(p);
  CHECK(fit[3] == doctest::Approx(eta(g)));
  CHECK(fit[0] == doctest::Approx(-eta(g)));
  CHECK(std::abs(fit[3] - std::sqrt(6.0) * g) / (std::sqrt(6.0) * g) < 1e-3);

  const auto exact = table2_exact_rows(make(g, 10, 0));
  CHECK(exact[0] == doctest::Approx(-5 - std::sqrt(25.0 + 400.0)));
  CHECK(std::count(exact.begin(), exact.end(), -10.0) == 1);
  CHECK(table2_eigenvalues(p).size() == 9);

  const auto c = compare_table2(make(20, 10, 8));
  CHECK(c.maxExactError <= 1e-9);
  CHECK(c.maxFitRelError <= 0.02);
  CHECK_THROWS_AS(table2_eigenvalues(make(20, 0, 0, 1.0)), DomainError);
}

TEST_CASE("peak detunings") {
  auto [plus, minus] = peak_detunings(make(20, 0, 0));
  CHECK(plus == doctest::Approx(28.284).epsilon(1e-5));
  CHECK(minus == doctest::Approx(-28.284).epsilon(1e-5));
  std::tie(plus, minus) = peak_detunings(make(20, 20, 4));
  CHECK(plus == doctest::Approx(10 + std::sqrt(916.0)).epsilon(1e-14));
  CHECK(minus == doctest::Approx(10 - std::sqrt(916.0)).epsilon(1e-14));
  CHECK(std::abs(minus + 20.266) < 1e-3);
  const auto t1 = table1_eigenvalues(make(20, 0, 13));
  CHECK(peak_detunings(make(20, 0, 13)).first == doctest::Approx(t1[4]));
  CHECK_THROWS_AS(peak_detunings(make(20, 0, 0, 3.0)), DomainError);
}

TEST_CASE("spectrum scans") {
  DressedScan s{{make(20, 0, 0), make(20, 10, 0)}, "omegaD", 0, 30, 4};
  const auto rows = spectrum_scan(s);
  CHECK(rows.size() == 2 * 4 * 14);
  CHECK(rows.front().manifold == Manifold::One);
  CHECK(rows[5].manifold == Manifold::Two);
  CHECK(rows[14].params.omegaD == 10.0);
  CHECK(rows.back().params.J == 10.0);
  CHECK(rows.back().params.omegaD == 30.0);
  for (const auto& r : rows)
    if (r.manifold == Manifold::One) CHECK(std::abs(r.numeric - r.closedForm) < 1e-9);
  s = {{make(20, 0, 0, 1.0)}, "J", 5, 5, 1};
  const auto one = spectrum_scan(s);
  CHECK(one.size() == 14);
  CHECK(std::isnan(one[0].closedForm));
  s.axis = "kappa";
  CHECK_THROWS_AS(spectrum_scan(s), std::invalid_argument);
}

TEST_CASE("outer one-photon levels separate as the drive grows") {
  double lastLo = 0, lastHi = 0;
  for (double od = 0; od <= 30; od += 5) {
    const auto v = one_photon_spectrum(make(20, 0, od)).eigenvalues;
    CHECK(v.front() == doctest::Approx(-v.back()));
    CHECK(v.back() > lastHi);
    CHECK(v.front() < lastLo);
    lastLo = v.front();
    lastHi = v.back();
  }
}
