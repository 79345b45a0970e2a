#include <cmath>
#include <numbers>

#include "blockade/errors.hpp"
#include "blockade/model.hpp"
#include "blockade/operators.hpp"
#include "doctest.h"

using namespace blockade;
using L = AtomLevel;

namespace {

SystemParams generic() {
  SystemParams p;
  p.delta = 3.3;
  p.g = 17.0;
  p.phiZ = 0.9;
  p.J = 6.5;
  p.omegaP = 0.7;
  p.omegaD = 4.2;
  p.fockCutoff = 3;
  return p;
}

cplx element(const ComplexMatrix& h, std::size_t r, std::size_t c) { return h(r, c); }

}  // namespace

TEST_CASE("coupling strengths") {
  SystemParams p;
  p.g = 20;
  auto c = coupling_strengths(p);
  CHECK(c.g1 == 20);
  CHECK(c.g2 == 20);
  CHECK(c.plus() == 40);
  CHECK(c.minus() == 0);
  p.phiZ = std::numbers::pi;
  c = coupling_strengths(p);
  CHECK(c.g2 == doctest::Approx(-20));
  CHECK(c.plus() == doctest::Approx(0).epsilon(1e-12));
  CHECK(c.minus() == doctest::Approx(40));
  p.phiZ = std::numbers::pi / 2;
  CHECK(std::abs(coupling_strengths(p).g2) < 1e-14);
}

TEST_CASE("hamiltonian matrix elements") {
  SystemParams bare;
  bare.omegaP = bare.omegaD = bare.g = bare.J = 0;
  bare.delta = 2;
  const auto h0 = build_hamiltonian(bare);
  const SpaceConfig cfg = bare.space();
  CHECK(max_abs_diff(h0, ComplexMatrix::diagonal(std::vector<cplx>(h0.rows()))) > 0);
  for (std::size_t i = 0; i < h0.rows(); ++i)
    for (std::size_t j = 0; j < h0.cols(); ++j)
      if (i != j) CHECK(h0(i, j) == cplx(0));
  CHECK(element(h0, flatten(L::g, L::g, 1, cfg), flatten(L::g, L::g, 1, cfg)) == cplx(-2));
  // cavity detuning counted once: |e,s,3> carries 2 atomic + 3 photonic excitations
  CHECK(element(h0, flatten(L::e, L::s, 3, cfg), flatten(L::e, L::s, 3, cfg)) == cplx(-10));

  const auto p = generic();
  const auto h = build_hamiltonian(p);
  const auto c = p.space();
  const auto g = coupling_strengths(p);
  CHECK(std::abs(element(h, flatten(L::e, L::g, 0, c), flatten(L::g, L::g, 1, c)) - g.g1) < 1e-14);
  CHECK(std::abs(element(h, flatten(L::g, L::e, 0, c), flatten(L::g, L::g, 1, c)) - g.g2) < 1e-14);
  CHECK(std::abs(element(h, flatten(L::e, L::g, 0, c), flatten(L::g, L::e, 0, c)) - p.J) < 1e-14);
  CHECK(std::abs(element(h, flatten(L::e, L::s, 0, c), flatten(L::s, L::e, 0, c)) - p.J) < 1e-14);
  CHECK(std::abs(element(h, flatten(L::e, L::g, 2, c), flatten(L::s, L::g, 2, c)) - p.omegaD) < 1e-14);
  CHECK(std::abs(element(h, flatten(L::g, L::e, 2, c), flatten(L::g, L::g, 2, c)) - p.omegaP) < 1e-14);
  CHECK(std::abs(element(h, flatten(L::e, L::g, 2, c), flatten(L::g, L::g, 3, c)) - g.g1 * std::sqrt(3.0)) < 1e-13);
}

TEST_CASE("hamiltonian is hermitian and conserves excitations without the pump") {
  auto p = generic();
  CHECK(hermiticity_error(build_hamiltonian(p)) <= 1e-14);
  const auto n = excitation_number(p.space());
  CHECK(max_abs(commutator(build_hamiltonian(p), n)) > 0.1);
  p.omegaP = 0;
  CHECK(max_abs(commutator(build_hamiltonian(p), n)) <= 1e-12);
}

TEST_CASE("symmetric placement makes H invariant under atom exchange") {
  auto p = generic();
  p.phiZ = 0;
  p.omegaP = 0;
  const SpaceConfig cfg = p.space();
  ComplexMatrix swap(cfg.dim(), cfg.dim());
  for (L a : kAtomLevels)
    for (L b : kAtomLevels)
      for (int n = 0; n <= cfg.fockCutoff; ++n) swap(flatten(b, a, n, cfg), flatten(a, b, n, cfg)) = 1;
  const auto h = build_hamiltonian(p);
  CHECK(max_abs_diff(swap * h * swap, h) <= 1e-13);
  // antisymmetric states never couple to symmetric ones
  const auto minus1 = collective_state(CollectiveKind::minus1, 0, cfg);
  const auto plus1 = collective_state(CollectiveKind::plus1, 0, cfg);
  const auto gg1 = collective_state(CollectiveKind::gg, 1, cfg);
  CHECK(std::abs(inner(gg1, h * minus1)) <= 1e-13);
  CHECK(std::abs(inner(gg1, h * plus1)) > 1.0);
}

TEST_CASE("collapse operators") {
  SystemParams p;
  auto cs = collapse_operators(p);
  REQUIRE(cs.size() == 7);
  const double expected[] = {1, 0.01, 0.01, 1, 0.01, 0.01, 1};
  for (std::size_t k = 0; k < 7; ++k) CHECK(cs[k].rate == expected[k]);
  const SpaceConfig cfg = p.space();
  CHECK(cs[0].op == cavity_annihilation(cfg));
  CHECK(cs[1].op == atomic_transition(1, L::g, L::e, cfg));
  CHECK(cs[2].op == atomic_transition(1, L::s, L::e, cfg));
  CHECK(cs[6].op == atomic_transition(2, L::g, L::s, cfg));
  const auto sg0 = StateVector::basis(cfg.dim(), flatten(L::s, L::g, 0, cfg));
  CHECK(cs[3].op * sg0 == StateVector::basis(cfg.dim(), flatten(L::g, L::g, 0, cfg)));

  p.gammaGE = p.gammaSE = p.gammaGS = 0;
  cs = collapse_operators(p);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].rate == 1.0);
}

TEST_CASE("parameter validation names the field") {
  auto bad = [](auto mutate) {
    SystemParams p;
    mutate(p);
    try {
      p.validate();
    } catch (const DomainError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(bad([](SystemParams& p) { p.gammaGS = -1; }).find("gammaGS") != std::string::npos);
  CHECK(bad([](SystemParams& p) { p.phiZ = 2 * std::numbers::pi; }).find("phiZ") != std::string::npos);
  CHECK(bad([](SystemParams& p) { p.fockCutoff = 1; }).find("fockCutoff") != std::string::npos);
  CHECK(bad([](SystemParams& p) { p.g = -0.5; }).find("g") != std::string::npos);
  CHECK(bad([](SystemParams& p) { p.kappa = 0; }).find("kappa") != std::string::npos);
  CHECK(bad([](SystemParams&) {}).empty());
}

TEST_CASE("named parameter access") {
  SystemParams p;
  for (const char* name : {"delta", "g", "phiZ", "J", "omegaP", "omegaD", "gammaGE", "gammaSE", "gammaGS"}) {
    set_param(p, name, 0.125);
    CHECK(get_param(p, name) == 0.125);
  }
  set_param(p, "fockCutoff", 9);
  CHECK(p.fockCutoff == 9);
  CHECK_THROWS_AS(set_param(p, "fockCutoff", 9.5), std::invalid_argument);
  CHECK_THROWS_AS(set_param(p, "kappaa", 1), std::invalid_argument);
  CHECK_THROWS_AS(get_param(p, "nope"), std::invalid_argument);
}

TEST_CASE("operator basis cache is shared per cutoff") {
  CHECK(operator_basis(4).get() == operator_basis(4).get());
  CHECK(operator_basis(4).get() != operator_basis(5).get());
  CHECK(operator_basis(4)->space.dim() == 45);
}
