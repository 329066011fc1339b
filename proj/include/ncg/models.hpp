#pragma once

// Model builders and the preset / configuration front end.
//
// Presets:
//   hs:N=3[,seed=1]                      M_N acting on itself, D = L_M + R_M
//   ym:k=2,N=2[,seed=7][,hop=0]          k copies of the above, optional hopping
//   comm:k=2[,seed=1][,hop=0]            C^k on C^k, real diagonal D, J = conjugation
//   orbifold:q=3,p=1,m=2                 equivariant M_q-valued functions (algebra only)

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "ncg/report.hpp"
#include "ncg/spectral.hpp"

namespace ncg {

/// Transposition on column-major vec: vec(x^T) = P vec(x).
CMatrix transposition_matrix(Index n);

/// Random hermitian N x N matrix with Gaussian entries.
CMatrix random_hermitian(Index n, std::uint64_t seed);

RealSpectralTriple build_hs_model(Index n, std::uint64_t seed = 1);

/// hopping is k x k, hermitian (BadHopping otherwise); entry (x, y) couples
/// block y to block x through the identity transporter.
RealSpectralTriple build_finite_ym(Index k, Index n, const CMatrix& hopping,
                                   std::uint64_t seed = 1);
/// Uniform real hopping lambda between every pair of points.
RealSpectralTriple build_finite_ym(Index k, Index n, double lambda, std::uint64_t seed = 1);

RealSpectralTriple build_commutative(Index k, std::uint64_t seed = 1, double hopping = 0.0);

struct OrbifoldModel {
  FiniteStarAlgebra algebra;
  Index center_dim = 0;
  CheckList checks;
};
/// Functions f on Z/q x {1..m} with f(g + y) = w(g) f(y) w(g)*, w(g) = R2^g.
OrbifoldModel build_orbifold_algebra(int q, int p, int m);

struct ModelSpec {
  std::string kind;  // hs | ym | comm | orbifold
  std::map<std::string, std::string> params;
  std::string text;

  long integer(const std::string& key, long fallback) const;
  double real(const std::string& key, double fallback) const;
};

/// ParseError on malformed text, unknown kinds or keys.
ModelSpec parse_model_spec(const std::string& text);
/// ParseError for orbifold specs (they describe algebras, not triples).
RealSpectralTriple build_triple(const ModelSpec& spec, std::optional<std::uint64_t> seed = {});

/// Triple from a configuration document (see docs/triple.schema.json).
/// ParseError on schema violations.
RealSpectralTriple triple_from_config(const nlohmann::json& doc);
RealSpectralTriple load_triple_config(const std::string& path);

}  // namespace ncg
