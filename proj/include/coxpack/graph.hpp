#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxpack/errors.hpp"

namespace coxpack {

inline constexpr int kMaxRank = 32;

/// Label of an edge of a Coxeter graph. A missing edge stands for m = 2.
/// Finite labels carry m >= 3; infinite labels carry c >= 1 (c > 1 is the
/// dotted edge of Vinberg's convention).
struct EdgeLabel {
  enum class Kind : std::uint8_t { Finite, Infinite };

  Kind kind = Kind::Finite;
  int m = 3;
  double c = 0.0;

  static EdgeLabel finite(int m) {
    if (m < 3) throw PreconditionError("finite edge label needs m >= 3, got " + std::to_string(m));
    return EdgeLabel{Kind::Finite, m, 0.0};
  }

  static EdgeLabel infinite(double c = 1.0) {
    if (!(c >= 1.0) || !std::isfinite(c))
      throw PreconditionError("infinite edge label needs c >= 1");
    return EdgeLabel{Kind::Infinite, 0, c};
  }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_dotted() const { return kind == Kind::Infinite && c > 1.0; }

  /// Off-diagonal entry of the Gram matrix.
  double gram_entry() const {
    return is_finite() ? -std::cos(std::numbers::pi / m) : -c;
  }

  auto operator<=>(const EdgeLabel&) const = default;
};

struct Edge {
  int u = 0;
  int v = 0;
  EdgeLabel label;

  bool operator==(const Edge&) const = default;
};

/// Edge-labeled simple graph on vertices 0..rank-1. Stored densely; the edge
/// set is the only identity, so equality ignores insertion order.
class CoxeterGraph {
 public:
  explicit CoxeterGraph(int rank) : rank_(rank), adj_(static_cast<std::size_t>(rank) * rank) {
    if (rank < 1 || rank > kMaxRank)
      throw PreconditionError("rank must be in 1.." + std::to_string(kMaxRank));
  }

  int rank() const { return rank_; }

  void set_edge(int u, int v, EdgeLabel label) {
    check_pair(u, v);
    adj_[index(u, v)] = label;
    adj_[index(v, u)] = label;
  }

  void remove_edge(int u, int v) {
    check_pair(u, v);
    adj_[index(u, v)].reset();
    adj_[index(v, u)].reset();
  }

  const std::optional<EdgeLabel>& label(int u, int v) const { return adj_[index(u, v)]; }
  bool adjacent(int u, int v) const { return u != v && adj_[index(u, v)].has_value(); }

  int degree(int v) const {
    int d = 0;
    for (int w = 0; w < rank_; ++w) d += adjacent(v, w) ? 1 : 0;
    return d;
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int w = 0; w < rank_; ++w)
      if (adjacent(v, w)) out.push_back(w);
    return out;
  }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < rank_; ++u)
      for (int v = u + 1; v < rank_; ++v)
        if (const auto& l = label(u, v)) out.push_back({u, v, *l});
    return out;
  }

  int edge_count() const {
    int e = 0;
    for (int u = 0; u < rank_; ++u)
      for (int v = u + 1; v < rank_; ++v) e += adjacent(u, v) ? 1 : 0;
    return e;
  }

  bool operator==(const CoxeterGraph&) const = default;

 private:
  std::size_t index(int u, int v) const { return static_cast<std::size_t>(u) * rank_ + v; }

  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= rank_ || v >= rank_)
      throw PreconditionError("vertex id out of range");
    if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u));
  }

  int rank_;
  std::vector<std::optional<EdgeLabel>> adj_;
};

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline std::string format_label(const EdgeLabel& l) {
  if (l.is_finite()) return std::to_string(l.m);
  if (l.c == 1.0) return "inf";
  return "inf(" + format_real(l.c) + ")";
}

}  // namespace detail

inline nlohmann::json to_json(const CoxeterGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    nlohmann::json je = {{"u", e.u}, {"v", e.v}};
    if (e.label.is_finite()) {
      je["m"] = e.label.m;
    } else {
      je["m"] = "inf";
      je["c"] = e.label.c;
    }
    edges.push_back(std::move(je));
  }
  return {{"rank", g.rank()}, {"edges", std::move(edges)}};
}

inline CoxeterGraph graph_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("rank") || !doc.contains("edges"))
      throw ParseError("graph document needs \"rank\" and \"edges\"");
    const auto& jr = doc.at("rank");
    if (!jr.is_number_integer()) throw ParseError("\"rank\" must be an integer");
    const int rank = jr.get<int>();
    if (rank < 2 || rank > kMaxRank)
      throw ParseError("rank must be in 2.." + std::to_string(kMaxRank));
    if (!doc.at("edges").is_array()) throw ParseError("\"edges\" must be an array");

    CoxeterGraph g(rank);
    for (const auto& je : doc.at("edges")) {
      if (!je.is_object() || !je.contains("u") || !je.contains("v") || !je.contains("m"))
        throw ParseError("edge needs \"u\", \"v\" and \"m\"");
      if (!je.at("u").is_number_integer() || !je.at("v").is_number_integer())
        throw ParseError("edge endpoints must be integers");
      const int u = je.at("u").get<int>();
      const int v = je.at("v").get<int>();
      if (u < 0 || v < 0 || u >= rank || v >= rank)
        throw ParseError("vertex id out of range in edge " + std::to_string(u) + "-" + std::to_string(v));
      if (u == v) throw ParseError("self-loop on vertex " + std::to_string(u));
      if (g.adjacent(u, v))
        throw ParseError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));

      const auto& jm = je.at("m");
      EdgeLabel label;
      if (jm.is_string() && jm.get<std::string>() == "inf") {
        double c = 1.0;
        if (je.contains("c")) {
          if (!je.at("c").is_number()) throw ParseError("\"c\" must be a number");
          c = je.at("c").get<double>();
        }
        if (!(c >= 1.0)) throw ParseError("infinite label needs c >= 1");
        label = EdgeLabel::infinite(c);
      } else if (jm.is_number_integer()) {
        const int m = jm.get<int>();
        if (m < 3) throw ParseError("edge label m must be >= 3 (absent edge means m = 2)");
        if (je.contains("c")) throw ParseError("\"c\" is only allowed with m = \"inf\"");
        label = EdgeLabel::finite(m);
      } else {
        throw ParseError("\"m\" must be an integer or \"inf\"");
      }
      g.set_edge(u, v, label);
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph document: ") + e.what());
  }
}

/// Parses the JSON graph schema `{"rank": n, "edges": [{"u","v","m","c"}]}`.
inline CoxeterGraph parse_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return graph_from_json(doc);
}

inline std::string format_graph_json(const CoxeterGraph& g) { return to_json(g).dump(); }

/// Compact text form, e.g. `n=4; 0-1:4 0-2:4 2-3:inf(1.1)`.
inline std::string format_compact(const CoxeterGraph& g) {
  std::string out = "n=" + std::to_string(g.rank()) + ";";
  for (const auto& e : g.edges())
    out += " " + std::to_string(e.u) + "-" + std::to_string(e.v) + ":" + detail::format_label(e.label);
  return out;
}

namespace detail {

class CompactScanner {
 public:
  explicit CompactScanner(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw ParseError(std::string("compact graph: expected '") + c + "' at offset " + std::to_string(pos_));
    ++pos_;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (s_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  int integer() {
    skip_ws();
    int value = 0;
    auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
    if (res.ec != std::errc()) throw ParseError("compact graph: expected integer at offset " + std::to_string(pos_));
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return value;
  }
  double real() {
    skip_ws();
    double value = 0;
    auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
    if (res.ec != std::errc()) throw ParseError("compact graph: expected number at offset " + std::to_string(pos_));
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return value;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline CoxeterGraph parse_compact(std::string_view text) {
  detail::CompactScanner sc(text);
  if (!sc.accept("n")) throw ParseError("compact graph must start with n=<rank>");
  sc.expect('=');
  const int rank = sc.integer();
  if (rank < 2 || rank > kMaxRank) throw ParseError("rank must be in 2.." + std::to_string(kMaxRank));
  sc.expect(';');
  CoxeterGraph g(rank);
  while (!sc.done()) {
    const int u = sc.integer();
    sc.expect('-');
    const int v = sc.integer();
    sc.expect(':');
    if (u < 0 || v < 0 || u >= rank || v >= rank) throw ParseError("vertex id out of range");
    if (u == v) throw ParseError("self-loop on vertex " + std::to_string(u));
    if (g.adjacent(u, v)) throw ParseError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    EdgeLabel label;
    if (sc.accept("inf")) {
      double c = 1.0;
      if (sc.accept("(")) {
        c = sc.real();
        sc.expect(')');
      }
      if (!(c >= 1.0)) throw ParseError("infinite label needs c >= 1");
      label = EdgeLabel::infinite(c);
    } else {
      const int m = sc.integer();
      if (m < 3) throw ParseError("edge label m must be >= 3");
      label = EdgeLabel::finite(m);
    }
    g.set_edge(u, v, label);
  }
  return g;
}

/// Accepts either the JSON document or the compact text form.
inline CoxeterGraph parse_graph_any(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_graph(text);
  return parse_compact(text);
}

// ---------------------------------------------------------------------------
// Structure

/// Subgraph on `keep` (any order, no duplicates), relabeled 0..k-1 by
/// increasing original id.
inline CoxeterGraph induced_subgraph(const CoxeterGraph& g, std::span<const int> keep) {
  if (keep.empty()) throw PreconditionError("induced_subgraph: empty vertex set");
  std::vector<int> ids(keep.begin(), keep.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw PreconditionError("induced_subgraph: duplicate vertex id");
  if (ids.front() < 0 || ids.back() >= g.rank()) throw PreconditionError("induced_subgraph: vertex id out of range");
  CoxeterGraph sub(static_cast<int>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (const auto& l = g.label(ids[i], ids[j])) sub.set_edge(static_cast<int>(i), static_cast<int>(j), *l);
  return sub;
}

inline std::vector<std::vector<int>> connected_components(const CoxeterGraph& g) {
  const int n = g.rank();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && g.adjacent(members[i], w)) {
          comp[w] = comp[s];
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline bool is_connected(const CoxeterGraph& g) { return connected_components(g).size() == 1; }

// ---------------------------------------------------------------------------
// Canonical form

namespace detail {

using LabelCode = std::vector<std::optional<EdgeLabel>>;

/// Color refinement to the coarsest equitable partition finer than `colors`.
/// Colors are dense 0..k-1 and assigned by sorting isomorphism-invariant
/// signatures, so the result commutes with relabeling.
inline std::vector<int> refine(const CoxeterGraph& g, std::vector<int> colors) {
  const int n = g.rank();
  using Signature = std::pair<int, std::vector<std::pair<int, EdgeLabel>>>;
  int classes = -1;
  while (true) {
    std::vector<Signature> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].first = colors[v];
      for (int w = 0; w < n; ++w)
        if (const auto& l = g.label(v, w); l && v != w) sig[v].second.emplace_back(colors[w], *l);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::vector<int> next(n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++k;
      next[order[i]] = k;
    }
    colors = std::move(next);
    if (k + 1 == classes) break;
    classes = k + 1;
  }
  return colors;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const CoxeterGraph& g) : g_(g), n_(g.rank()) {}

  LabelCode run() {
    std::vector<int> path;
    search(refine(g_, std::vector<int>(n_, 0)), path);
    return best_code_;
  }

 private:
  LabelCode code_for(const std::vector<int>& colors) const {
    std::vector<int> at(n_);
    for (int v = 0; v < n_; ++v) at[colors[v]] = v;
    LabelCode code;
    code.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) code.push_back(g_.label(at[i], at[j]));
    return code;
  }

  void search(const std::vector<int>& colors, std::vector<int>& path) {
    const int classes = *std::max_element(colors.begin(), colors.end()) + 1;
    if (classes == n_) {
      LabelCode code = code_for(colors);
      if (!have_best_ || code < best_code_) {
        best_code_ = std::move(code);
        best_colors_ = colors;
        have_best_ = true;
      } else if (code == best_code_) {
        // Both leaves give the same adjacency: best^{-1} o this is an automorphism.
        std::vector<int> best_at(n_);
        for (int v = 0; v < n_; ++v) best_at[best_colors_[v]] = v;
        std::vector<int> gamma(n_);
        for (int v = 0; v < n_; ++v) gamma[v] = best_at[colors[v]];
        automorphisms_.push_back(std::move(gamma));
      }
      return;
    }

    // Target cell: first color class with more than one vertex.
    std::vector<int> count(classes, 0);
    for (int c : colors) ++count[c];
    int target = 0;
    while (count[target] < 2) ++target;
    std::vector<int> cell;
    for (int v = 0; v < n_; ++v)
      if (colors[v] == target) cell.push_back(v);

    std::vector<int> explored;
    for (int v : cell) {
      if (in_explored_orbit(v, explored, path)) continue;
      explored.push_back(v);
      std::vector<int> split(n_);
      for (int u = 0; u < n_; ++u) split[u] = 2 * colors[u] + ((colors[u] == target && u != v) ? 1 : 0);
      path.push_back(v);
      search(refine(g_, std::move(split)), path);
      path.pop_back();
    }
  }

  // Orbit pruning with automorphisms that fix the current path pointwise.
  bool in_explored_orbit(int v, const std::vector<int>& explored, const std::vector<int>& path) const {
    if (explored.empty()) return false;
    std::vector<int> parent(n_);
    for (int i = 0; i < n_; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(path.begin(), path.end(), [&](int p) { return gamma[p] == p; });
      if (!fixes) continue;
      for (int x = 0; x < n_; ++x) parent[find(x)] = find(gamma[x]);
    }
    const int rv = find(v);
    return std::any_of(explored.begin(), explored.end(), [&](int e) { return find(e) == rv; });
  }

  const CoxeterGraph& g_;
  int n_;
  bool have_best_ = false;
  LabelCode best_code_;
  std::vector<int> best_colors_;
  std::vector<std::vector<int>> automorphisms_;
};

inline std::string key_token(const std::optional<EdgeLabel>& l) {
  if (!l) return ".";
  if (l->is_finite()) return l->m < 10 ? std::to_string(l->m) : "[" + std::to_string(l->m) + "]";
  if (l->c == 1.0) return "i";
  return "[i" + format_real(l->c) + "]";
}

}  // namespace detail

/// Isomorphism-invariant key of an edge-labeled graph: the rank followed by
/// the upper triangle of the adjacency under the lexicographically least
/// labeling reachable by individualization-refinement. Equal keys if and only
/// if the graphs are isomorphic.
inline std::string canonical_key(const CoxeterGraph& g) {
  const auto code = detail::CanonicalSearch(g).run();
  std::string key = std::to_string(g.rank()) + ":";
  for (const auto& l : code) key += detail::key_token(l);
  return key;
}

}  // namespace coxpack
