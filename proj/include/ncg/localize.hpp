#pragma once

// Localization over the finite spectrum X of A_J: each minimal projection p_x
// of A_J is a point, the fiber is p_x A, and I_x = (1 - p_x) A.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncg/report.hpp"
#include "ncg/spectral.hpp"

namespace ncg {

struct FiberDecomposition {
  FiniteStarAlgebra aj;
  ProjectionFamily base;
  std::vector<FiniteStarAlgebra> fibers;  // p_x A, unit p_x, defining representation
  CheckList checks;
};

/// Throws DegenerateDraw if the minimal projections cannot be separated.
FiberDecomposition localize(const RealSpectralTriple& t, std::uint64_t seed = 0x5eed);

/// Largest residual of p_x(ab) = (p_x a)(p_x b) and p_x a* = (p_x a)*.
double section_multiplicativity(const FiberDecomposition& dec, const CMatrix& a, const CMatrix& b);

struct NormComparison {
  double global = 0.0;    // ||pi(a)||
  double fiber_sup = 0.0; // max_x ||p_x a||
  double residual() const { return std::abs(global - fiber_sup); }
};
NormComparison norm_is_sup(const RealSpectralTriple& t, const FiberDecomposition& dec,
                           const CMatrix& a);

/// max_x || p_x (u a u*) - (p_x u)(p_x a)(p_x u)* ||.
double fiber_gauge_action(const FiberDecomposition& dec, const CMatrix& u, const CMatrix& a);

struct OmegaFiber {
  std::string label;
  Subspace space;  // pi(p_x) C_D(A)
  Index even_dim = 0;
  Index odd_dim = 0;
  Index intersection_dim = 0;
  /// || [pi(p_x), c] || over a basis of C_D(A)
  double centrality_residual = 0.0;
  /// largest residual of pi(p_x) omega against the fiber, omega in Omega^1_D
  double forms_residual = 0.0;
};

struct OmegaBundle {
  std::vector<OmegaFiber> fibers;
  Index cd_dim = 0;
  CheckList checks;
};

/// Omega fibers with parity, bookkeeping and localization checks. The gauge
/// action check draws `samples` random (u, omega) pairs.
OmegaBundle omega_bundle(const RealSpectralTriple& t, const FiberDecomposition& dec,
                         std::uint64_t seed = 0x5eed, int samples = 5);

/// pi(p_x)(u omega u*) against (pi(p_x u))(pi(p_x) omega)(pi(p_x u))*.
double omega_gauge_residual(const RealSpectralTriple& t, const FiberDecomposition& dec,
                            const CMatrix& u, const CMatrix& omega);

struct GroupBundleDims {
  std::vector<Index> unitary_dims;  // dim_R u(fiber_x)
  std::vector<Index> gauge_dims;    // dim_R u(fiber_x) - 1
  Index dim_u_a = 0;
  Index dim_gauge = 0;
  CheckList checks;
};
GroupBundleDims group_bundle_dims(const RealSpectralTriple& t, const FiberDecomposition& dec);

nlohmann::json to_json(const FiberDecomposition& dec, const GroupBundleDims& groups);

}  // namespace ncg
