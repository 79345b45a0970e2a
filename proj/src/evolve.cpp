#include "blockade/evolve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "blockade/errors.hpp"

namespace blockade {

namespace {

bool finite(const std::vector<cplx>& v) {
  for (auto x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

}  // namespace

DensityMatrix evolve(const Liouvillian& l, const DensityMatrix& rho0, const EvolveOptions& opts) {
  if (!(opts.dt > 0.0)) throw std::invalid_argument("evolve: dt must be > 0");
  if (!(opts.tMax >= 0.0)) throw std::invalid_argument("evolve: tMax must be >= 0");
  if (rho0.dim() != l.hilbert_dim()) throw DimensionError("evolve: initial state does not match the Liouvillian");

  auto y = vec(rho0.matrix());
  const std::size_t n = y.size();
  std::vector<cplx> k(n), acc(n), stage(n);

  const auto full = static_cast<long long>(std::floor(opts.tMax / opts.dt + 1e-9));
  const double rest = opts.tMax - static_cast<double>(full) * opts.dt;
  auto step = [&](double h) {
    // acc = k1 + 2k2 + 2k3 + k4
    l.apply(y, k);
    acc = k;
    stage = y;
    simd::axpy(0.5 * h, k, stage);
    l.apply(stage, k);
    simd::axpy(2.0, k, acc);
    stage = y;
    simd::axpy(0.5 * h, k, stage);
    l.apply(stage, k);
    simd::axpy(2.0, k, acc);
    stage = y;
    simd::axpy(h, k, stage);
    l.apply(stage, k);
    simd::axpy(1.0, k, acc);
    simd::axpy(h / 6.0, acc, y);
  };
  for (long long s = 0; s < full; ++s) {
    step(opts.dt);
    if (s % 256 == 255 && !finite(y)) throw StepSizeError("evolve: non-finite state at t = " + std::to_string((s + 1) * opts.dt));
  }
  if (rest > 1e-12 * opts.dt) step(rest);
  if (!finite(y)) throw StepSizeError("evolve: non-finite state at t = " + std::to_string(opts.tMax));
  return DensityMatrix(unvec(y, l.hilbert_dim()));
}

DensityMatrix evolve(const ComplexMatrix& h, const std::vector<CollapseOperator>& cs, const DensityMatrix& rho0,
                     const EvolveOptions& opts) {
  return evolve(build_liouvillian(h, cs), rho0, opts);
}

}  // namespace blockade
