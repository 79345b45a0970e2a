#include "blockade/krylov.hpp"

#include <algorithm>
#include <cmath>

namespace blockade {

namespace {

double norm2(std::span<const cplx> v) { return std::sqrt(simd::dotc(v, v).real()); }

}  // namespace

GmresResult gmres(const LinearOperator& apply, std::span<const cplx> b, const GmresOptions& opts) {
  const std::size_t n = b.size();
  const int m = std::max(1, opts.restart);
  GmresResult out;
  out.x.assign(n, cplx{});
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }

  std::vector<std::vector<cplx>> v(m + 1, std::vector<cplx>(n));
  std::vector<std::vector<cplx>> h(m + 1, std::vector<cplx>(m));
  std::vector<double> cs(m);
  std::vector<cplx> sn(m), gvec(m + 1);
  std::vector<cplx> r(n);

  while (out.iterations < opts.maxIterations) {
    // r = b - A x
    apply(out.x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double beta = norm2(r);
    out.relativeResidual = beta / bnorm;
    if (out.relativeResidual <= opts.tolerance) {
      out.converged = true;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / beta;
    std::fill(gvec.begin(), gvec.end(), cplx{});
    gvec[0] = beta;

    int k = 0;
    for (int j = 0; j < m && out.iterations < opts.maxIterations; ++j) {
      auto& w = v[j + 1];
      apply(v[j], w);
      ++out.iterations;
      for (int i = 0; i <= j; ++i) {
        h[i][j] = simd::dotc(v[i], w);
        simd::axpy(-h[i][j], v[i], w);
      }
      const double hn = norm2(w);
      h[j + 1][j] = hn;
      for (int i = 0; i < j; ++i) {
        const cplx a = h[i][j], c = h[i + 1][j];
        h[i][j] = cs[i] * a + sn[i] * c;
        h[i + 1][j] = -std::conj(sn[i]) * a + cs[i] * c;
      }
      const cplx a = h[j][j];
      const double t = std::hypot(std::abs(a), hn);
      if (std::abs(a) == 0.0) {
        cs[j] = 0.0;
        sn[j] = 1.0;
      } else {
        cs[j] = std::abs(a) / t;
        sn[j] = (a / std::abs(a)) * hn / t;
      }
      h[j][j] = cs[j] * a + sn[j] * hn;
      h[j + 1][j] = 0.0;
      gvec[j + 1] = -std::conj(sn[j]) * gvec[j];
      gvec[j] = cs[j] * gvec[j];
      k = j + 1;
      out.relativeResidual = std::abs(gvec[j + 1]) / bnorm;
      if (out.relativeResidual <= opts.tolerance || hn == 0.0) break;
      for (auto& x : w) x /= hn;
    }

    // back substitution, x += V y
    std::vector<cplx> y(k);
    for (int i = k - 1; i >= 0; --i) {
      cplx s = gvec[i];
      for (int l = i + 1; l < k; ++l) s -= h[i][l] * y[l];
      y[i] = s / h[i][i];
    }
    for (int i = 0; i < k; ++i) simd::axpy(y[i], v[i], out.x);
    if (out.relativeResidual <= opts.tolerance) break;
  }
  // true residual of the returned iterate
  apply(out.x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  out.relativeResidual = norm2(r) / bnorm;
  out.converged = out.relativeResidual <= opts.tolerance * 10.0;
  return out;
}

}  // namespace blockade
