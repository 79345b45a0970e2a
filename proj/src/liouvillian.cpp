#include "blockade/liouvillian.hpp"

#include <algorithm>
#include <string>

#include "blockade/errors.hpp"

namespace blockade {

namespace {

struct Entry {
  std::size_t r;
  std::size_t c;
  cplx v;
};

std::vector<Entry> nonzeros(const ComplexMatrix& m) {
  std::vector<Entry> out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != cplx{}) out.push_back({r, c, m(r, c)});
  return out;
}

}  // namespace

std::vector<cplx> vec(const ComplexMatrix& x) {
  const std::size_t d = x.rows();
  std::vector<cplx> v(d * x.cols());
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) v[c * d + r] = x(r, c);
  return v;
}

ComplexMatrix unvec(std::span<const cplx> v, std::size_t dim) {
  if (v.size() != dim * dim)
    throw DimensionError("unvec: length " + std::to_string(v.size()) + " is not " + std::to_string(dim) + "^2");
  ComplexMatrix x(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) x(r, c) = v[c * dim + r];
  return x;
}

Liouvillian::Liouvillian(std::size_t hilbertDim, CsrMatrix m)
    : dim_(hilbertDim), m_(std::move(m)), norm_(m_.frobenius_norm()) {
  if (m_.rows() != dim_ * dim_ || m_.cols() != dim_ * dim_) throw DimensionError("Liouvillian: size is not D^2 x D^2");
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("Liouvillian::apply: operand shape mismatch");
  const auto v = vec(x);
  std::vector<cplx> y(v.size());
  apply(v, y);
  return unvec(y, dim_);
}

Liouvillian build_liouvillian(const ComplexMatrix& h, const std::vector<CollapseOperator>& cs) {
  if (!h.is_square()) throw DimensionError("build_liouvillian: H is not square");
  const std::size_t d = h.rows();
  if (hermiticity_error(h) > 1e-10 * std::max(1.0, max_abs(h)))
    throw std::invalid_argument("build_liouvillian: H is not Hermitian");

  ComplexMatrix k(d, d);  // sum_k r_k C_k^dag C_k
  for (const auto& c : cs) {
    if (c.op.rows() != d || c.op.cols() != d)
      throw DimensionError("build_liouvillian: collapse operator is " + std::to_string(c.op.rows()) + "x" +
                           std::to_string(c.op.cols()) + ", expected " + std::to_string(d));
    if (!(c.rate >= 0.0)) throw std::invalid_argument("build_liouvillian: negative collapse rate");
    k.add_scaled(c.rate, dagger(c.op) * c.op);
  }
  const cplx i{0.0, 1.0};
  // I (x) left  and  right^T (x) I
  const auto left = nonzeros(-i * h - 0.5 * k);
  const auto right = nonzeros(i * h - 0.5 * k);

  std::vector<CsrMatrix::Triplet> t;
  t.reserve(d * (left.size() + right.size()));
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& e : left) t.push_back({j * d + e.r, j * d + e.c, e.v});
  for (const auto& e : right)
    for (std::size_t q = 0; q < d; ++q) t.push_back({e.c * d + q, e.r * d + q, e.v});
  for (const auto& c : cs) {
    if (c.rate == 0.0) continue;
    const auto nz = nonzeros(c.op);
    for (const auto& a : nz)
      for (const auto& b : nz) t.push_back({a.r * d + b.r, a.c * d + b.c, c.rate * std::conj(a.v) * b.v});
  }
  return Liouvillian(d, CsrMatrix::from_triplets(d * d, d * d, std::move(t)));
}

}  // namespace blockade
