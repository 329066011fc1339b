#include "ncg/kernels.hpp"

namespace ncg::kernels {

std::vector<CMatrix> left_products(std::span<const CMatrix> letters,
                                   std::span<const CMatrix> targets, Exec exec) {
  const Index nl = static_cast<Index>(letters.size());
  const Index nt = static_cast<Index>(targets.size());
  std::vector<CMatrix> out(static_cast<size_t>(nl * nt));
  if (exec == Exec::Parallel) {
#pragma omp parallel for collapse(2) schedule(static)
    for (Index l = 0; l < nl; ++l)
      for (Index t = 0; t < nt; ++t) out[static_cast<size_t>(l * nt + t)] = letters[l] * targets[t];
  } else {
    for (Index l = 0; l < nl; ++l)
      for (Index t = 0; t < nt; ++t) out[static_cast<size_t>(l * nt + t)] = letters[l] * targets[t];
  }
  return out;
}

std::vector<CMatrix> pair_products(std::span<const CMatrix> lhs, std::span<const CMatrix> rhs,
                                   Exec exec) {
  return left_products(lhs, rhs, exec);
}

std::vector<double> residuals(const Subspace& space, std::span<const CMatrix> candidates,
                              Exec exec) {
  const Index n = static_cast<Index>(candidates.size());
  std::vector<double> out(static_cast<size_t>(n));
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) out[i] = space.residual(candidates[i]);
  } else {
    for (Index i = 0; i < n; ++i) out[i] = space.residual(candidates[i]);
  }
  return out;
}

void for_each_index(Index count, Exec exec, const std::function<void(Index)>& f) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Index i = 0; i < count; ++i) f(i);
  } else {
    for (Index i = 0; i < count; ++i) f(i);
  }
}

}  // namespace ncg::kernels
