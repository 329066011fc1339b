#pragma once

// Data-parallel inner loops. Each kernel has a serial reference path and an
// OpenMP path selected by Exec; both produce identical output ordering.

#include <functional>
#include <span>
#include <vector>

#include "ncg/numerics.hpp"

namespace ncg::kernels {

/// All products letters[l] * targets[t], letter-major order.
std::vector<CMatrix> left_products(std::span<const CMatrix> letters,
                                   std::span<const CMatrix> targets, Exec exec);

/// All products lhs[i] * rhs[j], row-major in (i, j).
std::vector<CMatrix> pair_products(std::span<const CMatrix> lhs, std::span<const CMatrix> rhs,
                                   Exec exec);

/// Residuals of each candidate against the subspace.
std::vector<double> residuals(const Subspace& space, std::span<const CMatrix> candidates,
                              Exec exec);

/// out[i] = f(i) for i in [0, count).
void for_each_index(Index count, Exec exec, const std::function<void(Index)>& f);

}  // namespace ncg::kernels
