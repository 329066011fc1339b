#pragma once

#include <random>

#include "ncg/numerics.hpp"

namespace ncg::testing {

inline CMatrix gaussian(Index r, Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline CMatrix unit_matrix(Index n, Index i, Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace ncg::testing
