#pragma once

#include <random>

#include "blockade/matrix.hpp"

namespace testutil {

using blockade::ComplexMatrix;
using blockade::cplx;

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexMatrix m(r, c);
  for (auto& v : m.data()) v = {n(rng), n(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const auto m = random_matrix(d, d, rng);
  return cplx(0.5) * (m + blockade::dagger(m));
}

}  // namespace testutil
