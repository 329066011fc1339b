#pragma once

// Finite-dimensional *-algebras carried by a faithful matrix representation.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncg/numerics.hpp"

namespace ncg {

struct FiniteStarAlgebra {
  Subspace space;
  CMatrix unit;
  std::string label;

  Index size() const { return space.rows(); }
  Index dim() const { return space.dim(); }
  std::vector<CMatrix> basis() const { return space.basis(); }
  CMatrix basis(Index i) const { return space.basis(i); }
  double residual(const CMatrix& m) const { return space.residual(m); }
  /// Largest residual of b_i b_j and b_i* against the span.
  double closure_residual() const;
};

struct ProjectionFamily {
  std::vector<CMatrix> projections;
  std::vector<std::string> labels;

  size_t size() const { return projections.size(); }
};

FiniteStarAlgebra full_matrix_algebra(Index n);
FiniteStarAlgebra diagonal_algebra(Index n);
FiniteStarAlgebra scalar_algebra(Index n);
/// Block-diagonal algebra M_{n_1} + ... + M_{n_k} inside M_{n_1 + ... + n_k}.
FiniteStarAlgebra block_diagonal_algebra(const std::vector<Index>& block_sizes);

/// Packages a span after verifying product and adjoint closure (NotClosed) and
/// locating the unit (NoUnit).
FiniteStarAlgebra subalgebra_from_span(std::span<const CMatrix> vectors, Index n,
                                       std::string label = "subalgebra");

FiniteStarAlgebra center(const FiniteStarAlgebra& a);

/// Largest commutator norm among basis pairs.
double commutativity_residual(const FiniteStarAlgebra& a);

/// Minimal projections of a commutative algebra, read off from the spectrum of
/// a random self-adjoint element. Ordered by the first diagonal position each
/// projection occupies.
ProjectionFamily minimal_projections(const FiniteStarAlgebra& c, std::uint64_t seed = 0x5eed);

/// Real-orthonormal basis of the skew-hermitian part.
std::vector<CMatrix> skew_hermitian_basis(const FiniteStarAlgebra& a);

/// unit * exp(X) for a Gaussian X in the skew-hermitian part.
CMatrix random_unitary(const FiniteStarAlgebra& a, std::uint64_t seed);

/// Element with independent complex Gaussian coordinates.
CMatrix random_element(const FiniteStarAlgebra& a, std::mt19937_64& rng);
CMatrix random_self_adjoint(const FiniteStarAlgebra& a, std::mt19937_64& rng);

}  // namespace ncg
