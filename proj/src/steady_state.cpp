#include "blockade/steady_state.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "blockade/errors.hpp"
#include "blockade/krylov.hpp"

namespace blockade {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// A factorized square system supporting A x = b and A^dag x = b.
class Factorization {
 public:
  virtual ~Factorization() = default;
  virtual std::vector<cplx> solve(const std::vector<cplx>& b) const = 0;
  virtual std::vector<cplx> solve_adjoint(const std::vector<cplx>& b) const = 0;
};

class DenseLu final : public Factorization {
 public:
  explicit DenseLu(ComplexMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    const std::size_t n = lu_.rows();
    const double tiny = std::numeric_limits<double>::epsilon() * static_cast<double>(n) * max_abs(lu_);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
      if (!(std::abs(lu_(p, k)) > tiny)) throw SingularSystemError("dense LU: zero pivot in column " + std::to_string(k), kInf);
      if (p != k) {
        std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
        std::swap(perm_[k], perm_[p]);
      }
      const cplx piv = lu_(k, k);
      const auto pivotTail = lu_.row(k).subspan(k + 1);
      for (std::size_t i = k + 1; i < n; ++i) {
        const cplx f = lu_(i, k) / piv;
        lu_(i, k) = f;
        if (f != cplx{}) simd::axpy(-f, pivotTail, lu_.row(i).subspan(k + 1));
      }
    }
  }

  std::vector<cplx> solve(const std::vector<cplx>& b) const override {
    const std::size_t n = lu_.rows();
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
      x[i] /= lu_(i, i);
    }
    return x;
  }

  // P A = L U, so A^dag = U^dag L^dag P.
  std::vector<cplx> solve_adjoint(const std::vector<cplx>& b) const override {
    const std::size_t n = lu_.rows();
    std::vector<cplx> w(b);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) w[i] -= std::conj(lu_(j, i)) * w[j];
      w[i] /= std::conj(lu_(i, i));
    }
    for (std::size_t i = n; i-- > 0;)
      for (std::size_t j = i + 1; j < n; ++j) w[i] -= std::conj(lu_(j, i)) * w[j];
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = w[i];
    return x;
  }

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
};

using SparseMat = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;

class SparseLu final : public Factorization {
 public:
  explicit SparseLu(const SparseMat& a) {
    lu_.analyzePattern(a);
    lu_.factorize(a);
    if (lu_.info() != Eigen::Success) throw SingularSystemError("sparse LU: " + lu_.lastErrorMessage(), kInf);
  }
  std::vector<cplx> solve(const std::vector<cplx>& b) const override { return run(b, false); }
  std::vector<cplx> solve_adjoint(const std::vector<cplx>& b) const override { return run(b, true); }

 private:
  std::vector<cplx> run(const std::vector<cplx>& b, bool adjoint) const {
    auto& lu = const_cast<Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>>&>(lu_);
    Eigen::Map<const Eigen::VectorXcd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXcd x = adjoint ? Eigen::VectorXcd(lu.adjoint().solve(rhs)) : Eigen::VectorXcd(lu.solve(rhs));
    return {x.data(), x.data() + x.size()};
  }
  Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu_;
};

struct Augmented {
  std::size_t row;
  std::vector<CsrMatrix::Triplet> entries;
  double norm1;
};

Augmented augment(const Liouvillian& l) {
  const std::size_t row = trace_row(l);
  const std::size_t d = l.hilbert_dim(), n = d * d;
  const auto& m = l.matrix();
  const auto rp = m.row_ptr();
  const auto ci = m.col_idx();
  const auto v = m.values();
  Augmented a{row, {}, 0.0};
  a.entries.reserve(m.nonzeros() + d);
  std::vector<double> colSum(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    if (r == row) continue;
    for (auto k = rp[r]; k < rp[r + 1]; ++k) {
      a.entries.push_back({r, static_cast<std::size_t>(ci[k]), v[k]});
      colSum[ci[k]] += std::abs(v[k]);
    }
  }
  for (std::size_t q = 0; q < d; ++q) {
    a.entries.push_back({row, vec_index(q, q, d), 1.0});
    colSum[vec_index(q, q, d)] += 1.0;
  }
  for (double s : colSum) a.norm1 = std::max(a.norm1, s);
  return a;
}

std::unique_ptr<Factorization> factorize(const Augmented& a, std::size_t n, std::size_t denseLimit) {
  if (n <= denseLimit) {
    ComplexMatrix dense(n, n);
    for (const auto& t : a.entries) dense(t.row, t.col) += t.value;
    return std::make_unique<DenseLu>(std::move(dense));
  }
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(a.entries.size());
  for (const auto& t : a.entries)
    trip.emplace_back(static_cast<int>(t.row), static_cast<int>(t.col), t.value);
  SparseMat s(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  s.setFromTriplets(trip.begin(), trip.end());
  s.makeCompressed();
  return std::make_unique<SparseLu>(s);
}

double norm1(const std::vector<cplx>& v) {
  double s = 0.0;
  for (auto x : v) s += std::abs(x);
  return s;
}

// Hager/Higham estimate of ||A^-1||_1.
double inverse_norm1_estimate(const Factorization& f, std::size_t n) {
  std::vector<cplx> x(n, 1.0 / static_cast<double>(n));
  double est = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto y = f.solve(x);
    const double e = norm1(y);
    if (!std::isfinite(e)) return kInf;
    if (k > 0 && e <= est) break;
    est = e;
    std::vector<cplx> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = std::abs(y[i]) > 0.0 ? y[i] / std::abs(y[i]) : cplx{1.0};
    const auto z = f.solve_adjoint(xi);
    std::size_t j = 0;
    cplx zx{};
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(z[i]) > std::abs(z[j])) j = i;
      zx += std::conj(z[i]) * x[i];
    }
    if (k > 0 && std::abs(z[j]) <= zx.real()) break;
    std::fill(x.begin(), x.end(), cplx{});
    x[j] = 1.0;
  }
  return est;
}

void finish(SteadyState& out, const Liouvillian& l, ComplexMatrix rho, const SteadyStateOptions& opts) {
  DensityMatrix dm(std::move(rho));
  dm.hermitize();
  const cplx tr = dm.trace();
  if (tr != cplx{}) dm = DensityMatrix((1.0 / tr) * dm.matrix());
  const auto v = vec(dm.matrix());
  std::vector<cplx> r(v.size());
  l.apply(v, r);
  out.residual = std::sqrt(simd::dotc(r, r).real());
  out.liouvillianNorm = l.frobenius_norm();
  out.negative = !dm.is_positive(opts.negativityTolerance);
  out.rho = std::move(dm);
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

/// Exact inverse of X -> -i(Heff X - X Heff^dag) via Heff = Q T Q^dag.
class SylvesterInverse {
 public:
  explicit SylvesterInverse(const ComplexMatrix& heff) : d_(heff.rows()) {
    Eigen::MatrixXcd e(d_, d_);
    for (std::size_t r = 0; r < d_; ++r)
      for (std::size_t c = 0; c < d_; ++c) e(r, c) = heff(r, c);
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(e);
    if (schur.info() != Eigen::Success) return;
    t_ = from_eigen(schur.matrixT());
    q_ = from_eigen(schur.matrixU());
    qh_ = dagger(q_);
    double scale = 1.0, gap = kInf;
    for (std::size_t i = 0; i < d_; ++i) scale = std::max(scale, std::abs(t_(i, i)));
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) gap = std::min(gap, std::abs(t_(i, i) - std::conj(t_(j, j))));
    ok_ = gap > 1e-10 * scale;
  }

  bool ok() const noexcept { return ok_; }

  // Heff X - X Heff^dag = i Y  <=>  T X' - X' T^dag = i Q^dag Y Q
  ComplexMatrix apply(const ComplexMatrix& y) const {
    ComplexMatrix c = qh_ * y * q_;
    c *= cplx{0.0, 1.0};
    ComplexMatrix x(d_, d_);
    std::vector<cplx> rowAcc(d_);
    for (std::size_t i = d_; i-- > 0;) {
      std::copy(c.row(i).begin(), c.row(i).end(), rowAcc.begin());
      for (std::size_t l = i + 1; l < d_; ++l) simd::axpy(-t_(i, l), x.row(l), rowAcc);
      const cplx tii = t_(i, i);
      auto xi = x.row(i);
      for (std::size_t j = d_; j-- > 0;) {
        // sum_{l>j} X'_il conj(T_jl)
        const cplx s = j + 1 < d_ ? std::conj(simd::dotc(xi.subspan(j + 1), t_.row(j).subspan(j + 1))) : cplx{};
        xi[j] = (rowAcc[j] + s) / (tii - std::conj(t_(j, j)));
      }
    }
    return q_ * x * qh_;
  }

 private:
  std::size_t d_;
  ComplexMatrix t_, q_, qh_;
  bool ok_ = false;
};

bool try_krylov(SteadyState& out, const Liouvillian& l, const ComplexMatrix& h, const std::vector<CollapseOperator>& cs,
                const SteadyStateOptions& opts) {
  const std::size_t d = h.rows();
  ComplexMatrix heff = h;
  for (const auto& c : cs) heff.add_scaled(cplx{0.0, -0.5 * c.rate}, dagger(c.op) * c.op);
  const SylvesterInverse sinv(heff);
  if (!sinv.ok()) return false;

  ComplexMatrix y(d, d);
  y(0, 0) = 1.0;
  const auto rhs = vec(sinv.apply(y));
  std::vector<cplx> lx(d * d);
  auto op = [&](std::span<const cplx> x, std::span<cplx> outv) {
    l.apply(x, lx);
    cplx tr{};
    for (std::size_t q = 0; q < d; ++q) tr += x[vec_index(q, q, d)];
    lx[0] += tr;
    const auto z = vec(sinv.apply(unvec(lx, d)));
    std::copy(z.begin(), z.end(), outv.begin());
  };
  GmresOptions go;
  go.tolerance = opts.krylovTolerance;
  go.maxIterations = opts.krylovMaxIterations;
  const auto res = gmres(op, rhs, go);
  out.method = SolveMethod::Krylov;
  out.iterations = res.iterations;
  out.conditionEstimate = 0.0;
  out.replacedRow = 0;
  ComplexMatrix rho = unvec(res.x, d);
  if (!all_finite(rho)) return false;
  finish(out, l, std::move(rho), opts);
  return out.within_contract(opts.residualFactor);
}

}  // namespace

std::size_t trace_row(const Liouvillian& l) {
  const auto& m = l.matrix();
  std::size_t best = 0;
  double bestAbs = kInf;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double a = std::abs(m.at(r, r));
    if (a < bestAbs) {
      bestAbs = a;
      best = r;
    }
  }
  return best;
}

SteadyState steady_state(const Liouvillian& l, const SteadyStateOptions& opts) {
  const std::size_t d = l.hilbert_dim(), n = d * d;
  const auto aug = augment(l);
  const auto f = factorize(aug, n, opts.denseLimit);
  const double cond = aug.norm1 * inverse_norm1_estimate(*f, n);
  if (!(cond < 1e15)) throw SingularSystemError("trace-augmented Liouvillian is singular", cond);
  std::vector<cplx> b(n);
  b[aug.row] = 1.0;
  const auto x = f->solve(b);
  SteadyState out;
  out.method = SolveMethod::Direct;
  out.conditionEstimate = cond;
  out.replacedRow = aug.row;
  ComplexMatrix rho = unvec(x, d);
  if (!all_finite(rho)) throw SingularSystemError("steady-state solve produced non-finite values", cond);
  finish(out, l, std::move(rho), opts);
  return out;
}

SteadyState steady_state(const ComplexMatrix& h, const std::vector<CollapseOperator>& cs, const SteadyStateOptions& opts) {
  const auto l = build_liouvillian(h, cs);
  if (opts.method == SolveMethod::Direct) return steady_state(l, opts);
  SteadyState out;
  const bool ok = try_krylov(out, l, h, cs, opts);
  if (ok || opts.method == SolveMethod::Krylov) {
    if (!ok && out.rho.dim() == 0) throw SingularSystemError("Krylov route unavailable: preconditioner is singular", kInf);
    return out;
  }
  return steady_state(l, opts);
}

SteadyState steady_state(const SystemParams& p, const SteadyStateOptions& opts) {
  return steady_state(build_hamiltonian(p), collapse_operators(p), opts);
}

double augmented_min_singular_value(const Liouvillian& l, int iterations) {
  const std::size_t n = l.hilbert_dim() * l.hilbert_dim();
  const auto aug = augment(l);
  const auto f = factorize(aug, n, 1024);
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = cplx(1.0 + 0.1 * static_cast<double>(i % 7), 0.05 * static_cast<double>(i % 5));
  double lambda = 0.0;
  for (int k = 0; k < iterations; ++k) {
    const double nx = std::sqrt(simd::dotc(x, x).real());
    for (auto& v : x) v /= nx;
    x = f->solve(f->solve_adjoint(x));  // (A^dag A)^-1 x
    lambda = std::sqrt(simd::dotc(x, x).real());
  }
  return lambda > 0.0 ? 1.0 / std::sqrt(lambda) : kInf;
}

}  // namespace blockade
