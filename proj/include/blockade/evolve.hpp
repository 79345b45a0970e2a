#pragma once

#include <vector>

#include "blockade/density_matrix.hpp"
#include "blockade/liouvillian.hpp"
#include "blockade/model.hpp"

namespace blockade {

struct EvolveOptions {
  double dt = 1e-3;     // 1/kappa
  double tMax = 50.0;   // 1/kappa
};

/// Classical RK4 on d vec(rho)/dt = L vec(rho). The last step is shortened
/// when tMax is not a multiple of dt. Throws StepSizeError on non-finite
/// values and std::invalid_argument for dt <= 0 or tMax < 0.
DensityMatrix evolve(const Liouvillian& l, const DensityMatrix& rho0, const EvolveOptions& opts = {});

DensityMatrix evolve(const ComplexMatrix& h, const std::vector<CollapseOperator>& cs, const DensityMatrix& rho0,
                     const EvolveOptions& opts = {});

}  // namespace blockade
