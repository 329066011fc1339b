#include "ncg/models.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "ncg/nctorus.hpp"

namespace ncg {

CMatrix transposition_matrix(Index n) {
  CMatrix p = CMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) p(j + i * n, i + j * n) = 1.0;
  return p;
}

CMatrix random_hermitian(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

namespace {

CMatrix left_right_dirac(const CMatrix& m) {
  const Index n = m.rows();
  return kron(identity(n), m) + kron(m.transpose(), identity(n));
}

// pi(a) = blockdiag_x(L_{a_x}) for a block-diagonal a with equal blocks of size n.
CMatrix standard_rep(const CMatrix& a, const std::vector<Index>& blocks) {
  Index h = 0;
  for (Index b : blocks) h += b * b;
  CMatrix out = CMatrix::Zero(h, h);
  Index off_a = 0, off_h = 0;
  for (Index b : blocks) {
    out.block(off_h, off_h, b * b, b * b) = kron(identity(b), a.block(off_a, off_a, b, b));
    off_a += b;
    off_h += b * b;
  }
  return out;
}

CMatrix block_adjoint_kernel(const std::vector<Index>& blocks) {
  Index h = 0;
  for (Index b : blocks) h += b * b;
  CMatrix k = CMatrix::Zero(h, h);
  Index off = 0;
  for (Index b : blocks) {
    k.block(off, off, b * b, b * b) = transposition_matrix(b);
    off += b * b;
  }
  return k;
}

}  // namespace

RealSpectralTriple build_hs_model(Index n, std::uint64_t seed) {
  if (n < 1) throw BadParameters("N must be at least 1");
  FiniteStarAlgebra a = full_matrix_algebra(n);
  const CMatrix m = random_hermitian(n, seed);
  return make_triple(
      std::move(a), [&](const CMatrix& x) { return CMatrix(kron(identity(n), x)); },
      left_right_dirac(m), transposition_matrix(n), 1, 1, "hs:N=" + std::to_string(n));
}

RealSpectralTriple build_finite_ym(Index k, Index n, const CMatrix& hopping, std::uint64_t seed) {
  if (k < 1 || n < 1) throw BadParameters("k and N must be at least 1");
  if (hopping.rows() != k || hopping.cols() != k)
    throw BadHopping("hopping matrix must be " + std::to_string(k) + " x " + std::to_string(k));
  if (hermiticity_residual(hopping) > tol::construction)
    throw BadHopping("hopping coefficients must satisfy lambda_xy = conj(lambda_yx)");
  const std::vector<Index> blocks(static_cast<size_t>(k), n);
  FiniteStarAlgebra a = block_diagonal_algebra(blocks);
  const Index b = n * n;
  CMatrix d = CMatrix::Zero(k * b, k * b);
  for (Index x = 0; x < k; ++x) {
    d.block(x * b, x * b, b, b) = left_right_dirac(random_hermitian(n, seed + std::uint64_t(x)));
    for (Index y = 0; y < k; ++y)
      if (x != y) d.block(x * b, y * b, b, b) += hopping(x, y) * identity(b);
  }
  a.label = "ym:k=" + std::to_string(k) + ",N=" + std::to_string(n);
  return make_triple(
      std::move(a), [&](const CMatrix& x) { return standard_rep(x, blocks); }, std::move(d),
      block_adjoint_kernel(blocks), 1, 1, a.label);
}

RealSpectralTriple build_finite_ym(Index k, Index n, double lambda, std::uint64_t seed) {
  CMatrix hop = CMatrix::Constant(k, k, lambda);
  hop.diagonal().setZero();
  return build_finite_ym(k, n, hop, seed);
}

RealSpectralTriple build_commutative(Index k, std::uint64_t seed, double hopping) {
  if (k < 1) throw BadParameters("k must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix d = CMatrix::Constant(k, k, hopping);
  for (Index i = 0; i < k; ++i) d(i, i) = g(rng);
  FiniteStarAlgebra a = diagonal_algebra(k);
  return make_triple(
      std::move(a), [](const CMatrix& x) { return x; }, std::move(d), identity(k), 1, 1,
      "comm:k=" + std::to_string(k));
}

OrbifoldModel build_orbifold_algebra(int q, int p, int m) {
  if (m < 1) throw BadParameters("base multiplicity m must be at least 1");
  const auto [r1, r2] = clock_shift(q, p);
  const Index n = Index(q) * q * m;
  std::vector<CMatrix> w{identity(q)};
  for (int g = 1; g < q; ++g) w.push_back(w.back() * r2);

  // Point (g, j) of Z/q x {1..m} owns the diagonal block at (j q + g) q.
  auto offset = [q](int g, int j) { return Index(j * q + g) * q; };
  std::vector<CMatrix> basis;
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        CMatrix e = CMatrix::Zero(q, q);
        e(a, b) = 1.0;
        CMatrix f = CMatrix::Zero(n, n);
        for (int g = 0; g < q; ++g) f.block(offset(g, j), offset(g, j), q, q) = w[g] * e * w[g].adjoint();
        basis.push_back(f / std::sqrt(double(q)));
      }

  OrbifoldModel out;
  out.algebra = subalgebra_from_span(basis, n,
                                     "orbifold:q=" + std::to_string(q) + ",p=" + std::to_string(p) +
                                         ",m=" + std::to_string(m));
  double equivariance = 0.0;
  for (const auto& f : out.algebra.basis())
    for (int j = 0; j < m; ++j)
      for (int g = 0; g < q; ++g) {
        const int h = (g + 1) % q;
        const CMatrix here = f.block(offset(g, j), offset(g, j), q, q);
        const CMatrix there = f.block(offset(h, j), offset(h, j), q, q);
        equivariance = std::max(equivariance, (there - w[1] * here * w[1].adjoint()).norm());
      }
  out.center_dim = center(out.algebra).dim();
  out.checks.add("equivariance", "f(g.y) = w(g) f(y) w(g)*", equivariance, tol::derived, Scope::Exact);
  out.checks.add("closure", "product and adjoint closed", out.algebra.closure_residual(), tol::derived,
                 Scope::Exact);
  out.checks.add_count("dimension", "dim A = m q^2", long(m) * q * q, out.algebra.dim(),
                       Scope::RationalShadow);
  out.checks.add_count("center_dimension", "dim Z(A) = number of orbits = m", m, out.center_dim,
                       Scope::RationalShadow);
  return out;
}

// Presets

long ModelSpec::integer(const std::string& key, long fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || it->second.empty())
    throw ParseError("parameter " + key + "=" + it->second + " is not an integer in '" + text + "'");
  return v;
}

double ModelSpec::real(const std::string& key, double fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || it->second.empty())
    throw ParseError("parameter " + key + "=" + it->second + " is not a number in '" + text + "'");
  return v;
}

ModelSpec parse_model_spec(const std::string& text) {
  static const std::map<std::string, std::pair<std::set<std::string>, std::set<std::string>>> known{
      {"hs", {{"N"}, {"N", "seed"}}},
      {"ym", {{"k", "N"}, {"k", "N", "seed", "hop"}}},
      {"comm", {{"k"}, {"k", "seed", "hop"}}},
      {"orbifold", {{"q"}, {"q", "p", "m"}}},
  };
  ModelSpec spec;
  spec.text = text;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  auto it = known.find(spec.kind);
  if (it == known.end()) throw ParseError("unknown model kind '" + spec.kind + "' in '" + text + "'");
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
        throw ParseError("expected key=value, got '" + item + "' in '" + text + "'");
      const std::string key = item.substr(0, eq);
      if (!it->second.second.count(key))
        throw ParseError("unknown parameter '" + key + "' for " + spec.kind);
      if (!spec.params.emplace(key, item.substr(eq + 1)).second)
        throw ParseError("parameter '" + key + "' given twice in '" + text + "'");
    }
  }
  for (const auto& req : it->second.first)
    if (!spec.params.count(req)) throw ParseError("missing parameter '" + req + "' in '" + text + "'");
  return spec;
}

RealSpectralTriple build_triple(const ModelSpec& spec, std::optional<std::uint64_t> seed) {
  auto positive = [&](const std::string& key) {
    const long v = spec.integer(key, 0);
    if (v < 1 || v > 64) throw ParseError(key + " must lie in [1, 64] in '" + spec.text + "'");
    return Index(v);
  };
  const std::uint64_t s = seed ? *seed : std::uint64_t(spec.integer("seed", 1));
  RealSpectralTriple t;
  if (spec.kind == "hs") {
    t = build_hs_model(positive("N"), s);
  } else if (spec.kind == "ym") {
    t = build_finite_ym(positive("k"), positive("N"), spec.real("hop", 0.0), s);
  } else if (spec.kind == "comm") {
    t = build_commutative(positive("k"), s, spec.real("hop", 0.0));
  } else {
    throw ParseError("'" + spec.text + "' describes an algebra, not a spectral triple");
  }
  t.label = spec.text;
  return t;
}

// Configuration documents

namespace {

CMatrix matrix_from_json(const nlohmann::json& j, Index n, const std::string& what) {
  if (!j.is_object() || !j.contains("real"))
    throw ParseError(what + " must be an object with 'real' (and optional 'imag') rows");
  CMatrix m = CMatrix::Zero(n, n);
  auto fill = [&](const nlohmann::json& rows, bool imag) {
    if (!rows.is_array() || Index(rows.size()) != n)
      throw ParseError(what + " must have " + std::to_string(n) + " rows");
    for (Index i = 0; i < n; ++i) {
      const auto& row = rows[size_t(i)];
      if (!row.is_array() || Index(row.size()) != n)
        throw ParseError(what + " row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
      for (Index c = 0; c < n; ++c) {
        if (!row[size_t(c)].is_number()) throw ParseError(what + " entries must be numbers");
        const double v = row[size_t(c)].get<double>();
        if (imag)
          m(i, c) += cplx(0.0, v);
        else
          m(i, c) += v;
      }
    }
  };
  fill(j.at("real"), false);
  if (j.contains("imag")) fill(j.at("imag"), true);
  return m;
}

int sign_field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) return 1;
  if (!doc.at(key).is_number_integer()) throw ParseError(std::string(key) + " must be +1 or -1");
  const int v = doc.at(key).get<int>();
  if (v != 1 && v != -1) throw ParseError(std::string(key) + " must be +1 or -1");
  return v;
}

}  // namespace

RealSpectralTriple triple_from_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("configuration must be a JSON object");
  if (doc.contains("preset")) {
    if (!doc.at("preset").is_string()) throw ParseError("preset must be a string");
    RealSpectralTriple t = build_triple(parse_model_spec(doc.at("preset").get<std::string>()));
    if (doc.contains("label") && doc.at("label").is_string()) t.label = doc.at("label").get<std::string>();
    return t;
  }
  if (!doc.contains("algebra") || !doc.at("algebra").is_object() ||
      !doc.at("algebra").contains("blocks") || !doc.at("algebra").at("blocks").is_array())
    throw ParseError("configuration needs 'preset' or 'algebra.blocks'");
  std::vector<Index> blocks;
  for (const auto& b : doc.at("algebra").at("blocks")) {
    if (!b.is_number_integer() || b.get<long>() < 1 || b.get<long>() > 16)
      throw ParseError("block sizes must be integers in [1, 16]");
    blocks.push_back(b.get<Index>());
  }
  if (blocks.empty()) throw ParseError("algebra.blocks must not be empty");

  const std::string rep = doc.value("representation", std::string("standard"));
  if (rep != "standard" && rep != "defining")
    throw ParseError("representation must be 'standard' or 'defining'");
  const bool standard = rep == "standard";
  Index h = 0, n = 0;
  for (Index b : blocks) {
    h += standard ? b * b : b;
    n += b;
  }

  CMatrix d;
  if (!doc.contains("dirac") || !doc.at("dirac").is_object())
    throw ParseError("configuration needs a 'dirac' object");
  const auto& dj = doc.at("dirac");
  if (dj.contains("matrix")) {
    d = matrix_from_json(dj.at("matrix"), h, "dirac.matrix");
  } else if (dj.contains("random_seed") && dj.at("random_seed").is_number_integer()) {
    const auto seed = dj.at("random_seed").get<std::uint64_t>();
    d = CMatrix::Zero(h, h);
    if (standard) {
      Index off = 0;
      for (size_t x = 0; x < blocks.size(); ++x) {
        const Index b = blocks[x];
        d.block(off, off, b * b, b * b) = left_right_dirac(random_hermitian(b, seed + x));
        off += b * b;
      }
    } else {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> g;
      for (Index i = 0; i < h; ++i) d(i, i) = g(rng);
    }
  } else {
    throw ParseError("dirac needs 'matrix' or 'random_seed'");
  }

  CMatrix k;
  if (!doc.contains("real_structure")) throw ParseError("configuration needs 'real_structure'");
  const auto& rj = doc.at("real_structure");
  if (rj.is_string() && rj.get<std::string>() == "conjugation") {
    k = identity(h);
  } else if (rj.is_string() && rj.get<std::string>() == "adjoint") {
    if (!standard) throw ParseError("real_structure 'adjoint' needs the standard representation");
    k = block_adjoint_kernel(blocks);
  } else if (rj.is_object() && rj.contains("matrix")) {
    k = matrix_from_json(rj.at("matrix"), h, "real_structure.matrix");
  } else {
    throw ParseError("real_structure must be 'conjugation', 'adjoint' or {\"matrix\": ...}");
  }

  FiniteStarAlgebra a = block_diagonal_algebra(blocks);
  const std::string label = doc.value("label", std::string("config:") + a.label);
  std::function<CMatrix(const CMatrix&)> pi;
  if (standard)
    pi = [&](const CMatrix& x) { return standard_rep(x, blocks); };
  else
    pi = [](const CMatrix& x) { return x; };
  try {
    return make_triple(std::move(a), pi, std::move(d), std::move(k), sign_field(doc, "epsilon"),
                       sign_field(doc, "epsilon_prime"), label);
  } catch (const BadParameters& e) {
    throw ParseError(e.what());
  }
}

RealSpectralTriple load_triple_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open configuration file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
  return triple_from_config(doc);
}

}  // namespace ncg
