#pragma once

#include <functional>
#include <span>
#include <vector>

#include "blockade/matrix.hpp"

namespace blockade {

struct GmresOptions {
  double tolerance = 1e-12;  // on ||b - A x|| / ||b||
  int restart = 100;
  int maxIterations = 400;   // total operator applications
};

struct GmresResult {
  std::vector<cplx> x;
  int iterations = 0;
  double relativeResidual = 0.0;  // from the Arnoldi recurrence
  bool converged = false;
};

using LinearOperator = std::function<void(std::span<const cplx>, std::span<cplx>)>;

/// Restarted GMRES with modified Gram-Schmidt and complex Givens rotations, from x0 = 0.
GmresResult gmres(const LinearOperator& apply, std::span<const cplx> b, const GmresOptions& opts = {});

}  // namespace blockade
