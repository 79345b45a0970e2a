#pragma once

// Equal-time photon statistics of a density matrix on the full space. The
// cutoff is recovered from the dimension (D = 9(N+1)).

#include <string_view>

#include "blockade/density_matrix.hpp"

namespace blockade {

constexpr double kLowSignal = 1e-12;

/// <a^dag^k a^k>, real part. Throws DimensionError if rho is not 9(N+1) square with N >= 2.
double normally_ordered_moment(const DensityMatrix& rho, int k);

double mean_photon_number(const DensityMatrix& rho);

/// NaN when <a^dag a> <= threshold.
double g2(const DensityMatrix& rho, double threshold = kLowSignal);
double g3(const DensityMatrix& rho, double threshold = kLowSignal);

/// Probability of n photons (atoms traced out).
double fock_population(const DensityMatrix& rho, int n);

enum class Blockade { Undefined, None, SinglePhoton, TwoPhoton };

/// g2 < 1: single-photon; g2 > 1 and g3 < 1: two-photon; NaN input: undefined.
Blockade classify(double g2, double g3);
std::string_view to_string(Blockade b);

struct PointResult {
  double delta = 0.0;
  double meanN = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  double log10g2 = 0.0;
  double log10g3 = 0.0;
  double residual = 0.0;
  bool lowSignal = false;
  bool negative = false;         // steady state failed the positivity check
  double topFockPopulation = 0.0;  // population of |N>, a truncation diagnostic
};

/// Fills every field except delta and residual.
PointResult summarize(const DensityMatrix& rho, double threshold = kLowSignal);

}  // namespace blockade
