#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coxpack/detail/vector_index.hpp"
#include "coxpack/errors.hpp"
#include "coxpack/form.hpp"
#include "coxpack/graph.hpp"
#include "coxpack/orbit.hpp"

namespace coxpack {

struct Chamber {
  Eigen::MatrixXd element;
  std::vector<int> word;
  std::vector<int> vertices;  ///< vertex id of color s at position s
  int length = 0;
};

/// A vertex of the Coxeter complex: a weight w(omega_s), colored by s.
struct ComplexVertex {
  int id = 0;
  int color = 0;
  Eigen::VectorXd vector;
  int word_length = 0;  ///< length of the shortest chamber containing it
};

/// Chambers of length <= L with shared vertices. Chamber i is the group
/// element ball.elements[i]; chambers w and w*s share the panel of type s.
struct CoxeterComplex {
  GramMatrix gram;
  FundamentalWeights fundamental;
  GroupBall ball;
  std::vector<Chamber> chambers;
  std::vector<ComplexVertex> vertices;

  /// Index of chamber w*s, or -1 when outside the truncation.
  int neighbor(int chamber, int s) const { return ball.right[chamber][s]; }
  WeightRecord weight_record(int vertex) const {
    const auto& v = vertices[vertex];
    return {v.vector, v.word_length, gram.norm(v.vector), norm_class(fundamental.norms[v.color]), v.color};
  }
};

inline CoxeterComplex chambers_up_to_length(const CoxeterGraph& g, int L, const OrbitLimits& limits = {}) {
  CoxeterComplex cx;
  cx.gram = gram_matrix(g);
  if (type_of(signature(cx.gram)) != TypeClass::Lorentzian)
    throw PreconditionError("chambers_up_to_length: graph is not Lorentzian");
  cx.fundamental = fundamental_weights(cx.gram);
  cx.ball = group_ball(cx.gram, L, limits);
  const int n = cx.gram.size();

  detail::VectorIndex seen;
  cx.chambers.reserve(cx.ball.size());
  for (std::size_t e = 0; e < cx.ball.size(); ++e) {
    const auto& el = cx.ball.elements[e];
    Chamber ch{el.matrix, cx.ball.word(static_cast<int>(e)), std::vector<int>(n), el.length};
    for (int s = 0; s < n; ++s) {
      Eigen::VectorXd w = el.matrix * cx.fundamental.vectors.col(s);
      auto [id, inserted] = seen.insert(w);
      if (inserted) cx.vertices.push_back({static_cast<int>(id), s, std::move(w), el.length});
      ch.vertices[s] = static_cast<int>(id);
    }
    cx.chambers.push_back(std::move(ch));
  }
  return cx;
}

enum class VertexClass { Imaginary, Real, Surreal };

inline std::string_view to_string(VertexClass k) {
  switch (k) {
    case VertexClass::Imaginary: return "imaginary";
    case VertexClass::Real: return "real";
    case VertexClass::Surreal: return "surreal";
  }
  return "?";
}

/// Imaginary for norm <= 0, surreal for norm 1, real in between. A norm above
/// 1 cannot occur on a level-2 system and is reported as an inconsistency.
inline VertexClass classify_norm(double norm) {
  constexpr double tol = 1e-9;
  if (norm <= tol) return VertexClass::Imaginary;
  if (std::abs(norm - 1.0) <= tol) return VertexClass::Surreal;
  if (norm > 1.0 + tol) throw InconsistencyError("weight norm " + std::to_string(norm) + " exceeds 1");
  return VertexClass::Real;
}

inline VertexClass classify_vertex(const WeightRecord& omega, const GramMatrix& /*b*/) { return classify_norm(omega.norm); }

struct TangencyGraph {
  struct Vertex {
    int id = 0;
    int color = 0;
    VertexClass klass = VertexClass::Real;
    int word_length = 0;
    Eigen::VectorXd vector;
  };
  enum class Tag { Real, Surreal };
  struct Edge {
    int u = 0;
    int v = 0;
    Tag tag = Tag::Real;
    bool operator==(const Edge&) const = default;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  int truncation_length = 0;  ///< induced subgraph on vertices seen by chambers of length <= this
  int witness_length = 0;     ///< edges were read off chambers of length <= this

  std::set<std::pair<int, int>> edge_set() const {
    std::set<std::pair<int, int>> out;
    for (const auto& e : edges) out.emplace(e.u, e.v);
    return out;
  }
};

inline std::string_view to_string(TangencyGraph::Tag t) { return t == TangencyGraph::Tag::Real ? "real" : "surreal"; }

/// Chambers beyond the truncation length searched for edges between vertices
/// inside it. An edge between two vertices of word length <= L can be carried
/// only by longer chambers; on the census graphs a margin of 3 recovers every
/// such edge at L = 5.
inline constexpr int kDefaultWitnessMargin = 3;

/// Tangency graph read off the Coxeter complex: real edges are complex edges
/// whose normalized endpoints have product -1; surreal edges join the
/// same-colored vertices of two chambers sharing a surreal panel. Only vertices
/// of word length <= vertex_length are kept; every chamber of `cx` serves as a
/// witness for edges among them.
inline TangencyGraph tangency_graph(const CoxeterComplex& cx, int vertex_length) {
  const int n = cx.gram.size();
  std::vector<VertexClass> color_class(n);
  for (int s = 0; s < n; ++s) color_class[s] = classify_norm(cx.fundamental.norms[s]);
  auto has_ball = [&](int color) { return color_class[color] != VertexClass::Imaginary; };

  TangencyGraph tg;
  tg.truncation_length = std::min(vertex_length, cx.ball.max_length);
  tg.witness_length = cx.ball.max_length;
  std::vector<Eigen::VectorXd> unit(cx.vertices.size());
  std::vector<bool> kept(cx.vertices.size(), false);
  for (const auto& v : cx.vertices) {
    if (!has_ball(v.color) || v.word_length > vertex_length) continue;
    kept[v.id] = true;
    unit[v.id] = normalize_spacelike(v.vector, cx.gram);
    tg.vertices.push_back({v.id, v.color, color_class[v.color], v.word_length, v.vector});
  }

  std::set<std::pair<int, int>> real, surreal;
  for (std::size_t c = 0; c < cx.chambers.size(); ++c) {
    const auto& ch = cx.chambers[c];
    for (int a = 0; a < n; ++a) {
      if (!has_ball(a)) continue;
      for (int b2 = a + 1; b2 < n; ++b2) {
        if (!has_ball(b2)) continue;
        const int u = ch.vertices[a], v = ch.vertices[b2];
        if (!kept[u] || !kept[v]) continue;
        if (std::abs(cx.gram.form(unit[u], unit[v]) + 1.0) <= 1e-9) real.emplace(std::min(u, v), std::max(u, v));
      }
      if (color_class[a] != VertexClass::Surreal) continue;
      const int other = cx.neighbor(static_cast<int>(c), a);
      if (other < 0) continue;
      const int u = ch.vertices[a], v = cx.chambers[other].vertices[a];
      if (u != v && kept[u] && kept[v]) surreal.emplace(std::min(u, v), std::max(u, v));
    }
  }
  for (auto [u, v] : real) tg.edges.push_back({u, v, TangencyGraph::Tag::Real});
  for (auto [u, v] : surreal) tg.edges.push_back({u, v, TangencyGraph::Tag::Surreal});
  std::sort(tg.edges.begin(), tg.edges.end(), [](const auto& x, const auto& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
  return tg;
}

inline TangencyGraph tangency_graph(const CoxeterComplex& cx) { return tangency_graph(cx, cx.ball.max_length); }

/// Induced tangency graph on the vertices of chambers of length <= L, with
/// edges witnessed by chambers of length <= L + witness_margin.
inline TangencyGraph tangency_graph(const CoxeterGraph& g, int L, const OrbitLimits& limits = {},
                                    int witness_margin = kDefaultWitnessMargin) {
  if (L < 0 || witness_margin < 0) throw PreconditionError("tangency_graph: lengths must be >= 0");
  if (level(g) != 2) throw PreconditionError("tangency_graph: graph is not of level 2");
  return tangency_graph(chambers_up_to_length(g, L + witness_margin, limits), L);
}

/// Pairs (i, j), i < j, of input weights whose balls are tangent
/// (separation 1 within 1e-9).
inline std::vector<std::pair<int, int>> geometric_oracle(const std::vector<WeightRecord>& weights, const GramMatrix& b) {
  std::vector<Eigen::VectorXd> unit;
  for (const auto& w : weights) unit.push_back(normalize_spacelike(w.vector, b));
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < unit.size(); ++i)
    for (std::size_t j = i + 1; j < unit.size(); ++j)
      if (std::abs(b.form(unit[i], unit[j]) + 1.0) <= 1e-9) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

/// Edge set of the geometric oracle over the tangency graph's own vertices,
/// expressed in vertex ids.
inline std::set<std::pair<int, int>> oracle_edges(const TangencyGraph& tg, const GramMatrix& b) {
  std::vector<WeightRecord> ws;
  for (const auto& v : tg.vertices) ws.push_back({v.vector, v.word_length, b.norm(v.vector), NormClass::SpaceLike, v.color});
  std::set<std::pair<int, int>> out;
  for (auto [i, j] : geometric_oracle(ws, b)) {
    const int u = tg.vertices[i].id, v = tg.vertices[j].id;
    out.emplace(std::min(u, v), std::max(u, v));
  }
  return out;
}

/// Every deletion of two vertices leaves a finite (positive definite) graph.
inline bool is_strict_level2(const CoxeterGraph& g, double zero_tol = kDefaultZeroTol) {
  const auto b = gram_matrix(g);
  if (level(b, zero_tol) != 2) throw PreconditionError("is_strict_level2: graph is not of level 2");
  return detail::for_each_subset(b.size(), b.size() - 2, [&](const std::vector<int>& keep) {
    return detail::is_positive_definite(detail::principal(b.matrix(), keep), zero_tol);
  });
}

}  // namespace coxpack
