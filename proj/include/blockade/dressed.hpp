#pragma once

// Collective-basis Hamiltonians of the one- and two-excitation manifolds
// (pump off) and their closed-form spectra.
//
// One-photon basis:  |gg,1>, |+1,0>, |-1,0>, |+2,0>, |-2,0>
// Two-photon basis:  |gg,2>, |+1,1>, |-1,1>, |+2,1>, |-2,1>, |+3,0>, |-3,0>, |ss,0>, |ee,0>
// with g+- = g(1 +- cos phiZ).
//
// two_photon_matrix() has Omega_d on the drive entries between |+3,0> and
// |ss,0>, |ee,0>. Projecting the full Hamiltonian gives sqrt(2) Omega_d there,
// which two_photon_matrix_exact() carries. The fitted Table II rows follow
// the former.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "blockade/hilbert.hpp"
#include "blockade/matrix.hpp"

namespace blockade {

struct DressedParams {
  double omegaC = 0.0;
  double g = 20.0;
  double phiZ = 0.0;
  double J = 0.0;
  double omegaD = 0.0;
};

enum class Manifold { One, Two };
std::string to_string(Manifold m);

struct BasisLabel {
  CollectiveKind kind;
  int photons;
};

std::vector<BasisLabel> collective_basis(Manifold m);

ComplexMatrix one_photon_matrix(const DressedParams& p);
ComplexMatrix two_photon_matrix(const DressedParams& p);
ComplexMatrix two_photon_matrix_exact(const DressedParams& p);

/// V^dag H V with H the full Hamiltonian at delta = -omegaC, omegaP = 0, and V
/// the collective basis of the manifold. Throws std::logic_error if V is not orthonormal.
ComplexMatrix project_full_hamiltonian(const DressedParams& p, Manifold m, int fockCutoff = 7);

/// Ascending. Throw DomainError unless phiZ == 0.
std::array<double, 5> table1_eigenvalues(const DressedParams& p);
std::array<double, 9> table2_eigenvalues(const DressedParams& p);

/// The five rows of Table II given by exact radicals: 2wc (twice), 2wc - J/2 +- sqrt(J^2/4 + Od^2 + g^2), 2wc - J.
std::array<double, 5> table2_exact_rows(const DressedParams& p);
/// The four fitted rows 2wc + J/2 +- 1.87 sqrt(A -+ B), ascending.
std::array<double, 4> table2_fit_rows(const DressedParams& p);

double table2_a(const DressedParams& p);
double table2_b(const DressedParams& p);
/// chi = 1.87 sqrt(A - B), eta = 1.87 sqrt(A + B), both at J = 0 and Omega_d = 0.
double chi(double g);
double eta(double g);

/// (Delta+, Delta-) = (J +- sqrt(J^2 + 4 Od^2 + 8 g^2)) / 2. Throws DomainError unless phiZ == 0.
std::pair<double, double> peak_detunings(const DressedParams& p);

struct DressedSpectrum {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;
  std::vector<double> closedForm;   // ascending; empty when phiZ != 0
};

DressedSpectrum one_photon_spectrum(const DressedParams& p);
DressedSpectrum two_photon_spectrum(const DressedParams& p);

struct Table1Comparison {
  double maxAbsError;
};
struct Table2Comparison {
  double maxExactError;  // exact rows vs nearest numeric eigenvalue
  double maxFitRelError; // remaining eigenvalues vs fitted rows, relative
};

Table1Comparison compare_table1(const DressedParams& p);
/// Against two_photon_matrix().
Table2Comparison compare_table2(const DressedParams& p);

struct SpectrumRow {
  DressedParams params;
  Manifold manifold;
  int level;
  double numeric;
  double closedForm;  // NaN when undefined
};

struct DressedScan {
  std::vector<DressedParams> bases;
  std::string axis;  // "omegaD", "J" or "g"
  double min = 0.0;
  double max = 30.0;
  int steps = 121;
};

/// Both manifolds at every scan point, bases outermost.
std::vector<SpectrumRow> spectrum_scan(const DressedScan& scan);

}  // namespace blockade
