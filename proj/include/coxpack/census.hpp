#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "coxpack/complex.hpp"
#include "coxpack/detail/parallel.hpp"
#include "coxpack/errors.hpp"
#include "coxpack/form.hpp"
#include "coxpack/graph.hpp"

namespace coxpack {

/// Nomination families, in dedup priority order.
enum class Family { FromK4, FromK4minusE, FromK23, TwoCycles, Cycle, CycleTail1, CycleTail2, CycleTwoTails, Tree };

inline constexpr std::array<Family, 9> kAllFamilies = {Family::FromK4,     Family::FromK4minusE, Family::FromK23,
                                                       Family::TwoCycles,  Family::Cycle,        Family::CycleTail1,
                                                       Family::CycleTail2, Family::CycleTwoTails, Family::Tree};

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::FromK4: return "FromK4";
    case Family::FromK4minusE: return "FromK4minusE";
    case Family::FromK23: return "FromK23";
    case Family::TwoCycles: return "TwoCycles";
    case Family::Cycle: return "Cycle";
    case Family::CycleTail1: return "CycleTail1";
    case Family::CycleTail2: return "CycleTail2";
    case Family::CycleTwoTails: return "CycleTwoTails";
    case Family::Tree: return "Tree";
  }
  return "?";
}

inline const std::vector<int>& admissible_labels() {
  static const std::vector<int> labels{3, 4, 5, 6};
  return labels;
}

namespace detail {

inline void check_labels(const std::vector<int>& labels) {
  if (labels.empty()) throw PreconditionError("unsupported label set: empty");
  for (int m : labels)
    if (m < 3 || m > 6) throw PreconditionError("unsupported label set: labels must lie in {3,4,5,6}");
}

inline CoxeterGraph with_extra_vertex(const CoxeterGraph& g) {
  CoxeterGraph h(g.rank() + 1);
  for (const auto& e : g.edges()) h.set_edge(e.u, e.v, e.label);
  return h;
}

/// Relabels vertices in BFS order from vertex 0, so every prefix is connected.
inline CoxeterGraph bfs_relabel(const CoxeterGraph& g) {
  const int n = g.rank();
  std::vector<int> order{0}, pos(n, -1);
  pos[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : g.neighbors(order[i]))
      if (pos[w] < 0) {
        pos[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
  if (static_cast<int>(order.size()) != n) throw PreconditionError("bfs_relabel: graph is disconnected");
  CoxeterGraph h(n);
  for (const auto& e : g.edges()) h.set_edge(pos[e.u], pos[e.v], e.label);
  return h;
}

inline CoxeterGraph path_shape(int n) {
  CoxeterGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1, EdgeLabel::finite(3));
  return g;
}

inline CoxeterGraph cycle_shape(int n) {
  CoxeterGraph g = path_shape(n);
  g.set_edge(n - 1, 0, EdgeLabel::finite(3));
  return g;
}

/// Cycle on k vertices plus one pendant vertex attached to vertex 0.
inline CoxeterGraph tailed_cycle_shape(int k) {
  CoxeterGraph g = with_extra_vertex(cycle_shape(k));
  g.set_edge(0, k, EdgeLabel::finite(3));
  return g;
}

/// Two vertices joined by three internally disjoint paths with the given
/// numbers of interior vertices.
inline CoxeterGraph theta_shape(int a, int b, int c) {
  const int n = 2 + a + b + c;
  CoxeterGraph g(n);
  int next = 2;
  for (int len : {a, b, c}) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      g.set_edge(prev, next, EdgeLabel::finite(3));
      prev = next++;
    }
    if (prev == 0)
      g.set_edge(0, 1, EdgeLabel::finite(3));
    else
      g.set_edge(prev, 1, EdgeLabel::finite(3));
  }
  return g;
}

inline CoxeterGraph butterfly_shape() {
  CoxeterGraph g(5);
  for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}}) g.set_edge(u, v, EdgeLabel::finite(3));
  return g;
}

inline CoxeterGraph complete_shape(int n) {
  CoxeterGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j, EdgeLabel::finite(3));
  return g;
}

inline bool prefix_level_ok(const Eigen::MatrixXd& gram, int m, int bound, double zero_tol) {
  if (bound >= m - 1) return true;
  return is_level_at_most(GramMatrix(gram.topLeftCorner(m, m)), bound, zero_tol);
}

}  // namespace detail

/// Simply-laced special graphs K4, K4 - e and K_{2,3}.
inline CoxeterGraph special_k4() { return detail::complete_shape(4); }
inline CoxeterGraph special_k4_minus_e() {
  CoxeterGraph g = detail::complete_shape(4);
  g.remove_edge(2, 3);
  return g;
}
inline CoxeterGraph special_k23() { return detail::theta_shape(1, 1, 1); }

/// Unlabeled free trees on exactly n vertices (edges carry placeholder label
/// 3), relabeled in BFS order. Built by leaf extension with canonical-key
/// dedup.
inline std::vector<CoxeterGraph> free_trees(int n) {
  if (n < 1) return {};
  std::map<std::string, CoxeterGraph> layer;
  layer.emplace(canonical_key(CoxeterGraph(1)), CoxeterGraph(1));
  for (int k = 2; k <= n; ++k) {
    std::map<std::string, CoxeterGraph> next;
    for (const auto& [key, t] : layer)
      for (int v = 0; v < t.rank(); ++v) {
        CoxeterGraph h = detail::with_extra_vertex(t);
        h.set_edge(v, k - 1, EdgeLabel::finite(3));
        next.emplace(canonical_key(h), std::move(h));
      }
    layer = std::move(next);
  }
  std::vector<CoxeterGraph> out;
  for (auto& [key, t] : layer) out.push_back(detail::bfs_relabel(t));
  return out;
}

/// Enumerates every labeling of the edges of `shape` (vertices in an order
/// with connected prefixes) with labels from `labels`. A partial labeling is
/// abandoned as soon as a completed prefix subgraph on m vertices fails to be
/// of level <= max(0, target_level - (n - m)), which every induced subgraph of
/// a level <= target_level graph satisfies.
template <class Sink>
void label_shape(const CoxeterGraph& shape, const std::vector<int>& labels, int target_level, double zero_tol,
                 Sink&& sink) {
  const int n = shape.rank();
  std::vector<std::vector<int>> back(n);
  for (const auto& e : shape.edges()) back[std::max(e.u, e.v)].push_back(std::min(e.u, e.v));
  CoxeterGraph g(n);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(n, n);

  std::function<void(int)> vertex = [&](int k) {
    if (k == n) {
      sink(static_cast<const CoxeterGraph&>(g));
      return;
    }
    const auto& nb = back[k];
    std::vector<int> choice(nb.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < nb.size(); ++i) {
        const auto label = EdgeLabel::finite(labels[choice[i]]);
        g.set_edge(nb[i], k, label);
        gram(nb[i], k) = gram(k, nb[i]) = label.gram_entry();
      }
      const int bound = std::max(0, target_level - (n - (k + 1)));
      if (detail::prefix_level_ok(gram, k + 1, bound, zero_tol)) vertex(k + 1);
      std::size_t i = 0;
      while (i < nb.size() && ++choice[i] == static_cast<int>(labels.size())) choice[i++] = 0;
      if (i == nb.size()) break;
    }
    for (int u : nb) {
      g.remove_edge(u, k);
      gram(u, k) = gram(k, u) = 0.0;
    }
  };
  vertex(1);
}

enum class Shape { Tree, Path, Cycle, TailedCycle, Other };

/// Structural shape of a connected graph (a path is reported as Path, not Tree).
inline Shape shape_of(const CoxeterGraph& g) {
  if (!is_connected(g)) return Shape::Other;
  const int n = g.rank();
  const int e = g.edge_count();
  int max_deg = 0, leaves = 0;
  for (int v = 0; v < n; ++v) {
    max_deg = std::max(max_deg, g.degree(v));
    leaves += g.degree(v) == 1 ? 1 : 0;
  }
  if (e == n - 1) return max_deg <= 2 ? Shape::Path : Shape::Tree;
  if (e == n) {
    if (max_deg == 2) return Shape::Cycle;
    if (leaves == 1 && max_deg == 3) {
      for (int v = 0; v < n; ++v)
        if (g.degree(v) == 1 && g.degree(g.neighbors(v)[0]) == 3) return Shape::TailedCycle;
    }
  }
  return Shape::Other;
}

/// Connected level-1 graphs on <= max_n vertices over `labels` that are trees,
/// cycles or cycles with one tail of length 1, plus the three simply-laced
/// specials; sorted by canonical key.
inline std::vector<CoxeterGraph> enumerate_level1(int max_n, const std::vector<int>& labels,
                                                  double zero_tol = kDefaultZeroTol) {
  detail::check_labels(labels);
  if (max_n > 10) throw PreconditionError("enumerate_level1: max_n must be <= 10");
  std::map<std::string, CoxeterGraph> found;
  auto keep = [&](const CoxeterGraph& g) {
    if (level(g, zero_tol) == 1) found.emplace(canonical_key(g), g);
  };
  std::vector<CoxeterGraph> shapes;
  for (int n = 3; n <= max_n; ++n) {
    for (auto& t : free_trees(n)) shapes.push_back(std::move(t));
    shapes.push_back(detail::cycle_shape(n));
    if (n >= 4) shapes.push_back(detail::tailed_cycle_shape(n - 1));
  }
  for (const auto& s : shapes) label_shape(s, labels, 1, zero_tol, keep);
  for (const auto& s : {special_k4(), special_k4_minus_e(), special_k23()})
    if (s.rank() <= max_n) keep(s);
  std::vector<CoxeterGraph> out;
  for (auto& [key, g] : found) out.push_back(g);
  return out;
}

// ---------------------------------------------------------------------------
// Nomination

struct NominationOptions {
  int min_rank = 5;
  int max_rank = 11;
  /// When set, shape-labeling families abandon partial labelings whose
  /// completed prefix cannot sit inside a level <= 2 graph.
  bool prune = false;
  double zero_tol = kDefaultZeroTol;
};

namespace detail {

template <class Sink>
void extend_vertex(const CoxeterGraph& base, const std::vector<int>& attach, const std::vector<int>& labels,
                   Sink&& sink) {
  CoxeterGraph g = with_extra_vertex(base);
  const int v = base.rank();
  std::vector<int> choice(attach.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < attach.size(); ++i) g.set_edge(attach[i], v, EdgeLabel::finite(labels[choice[i]]));
    sink(static_cast<const CoxeterGraph&>(g));
    std::size_t i = 0;
    while (i < attach.size() && ++choice[i] == static_cast<int>(labels.size())) choice[i++] = 0;
    if (i == attach.size()) break;
  }
}

inline std::vector<int> leaves_of(const CoxeterGraph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.rank(); ++v)
    if (g.degree(v) == 1) out.push_back(v);
  return out;
}

/// Vertices on the unique cycle of a unicyclic graph.
inline std::vector<int> cycle_vertices(const CoxeterGraph& g) {
  const int n = g.rank();
  std::vector<int> deg(n);
  std::vector<bool> gone(n, false);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v)
      if (!gone[v] && deg[v] <= 1) {
        gone[v] = true;
        changed = true;
        for (int w : g.neighbors(v)) --deg[w];
      }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!gone[v]) out.push_back(v);
  return out;
}

/// Path vertices from one end to the other.
inline std::vector<int> path_order(const CoxeterGraph& g) {
  int start = 0;
  for (int v = 0; v < g.rank(); ++v)
    if (g.degree(v) <= 1) {
      start = v;
      break;
    }
  std::vector<int> order{start};
  std::vector<bool> seen(g.rank(), false);
  seen[start] = true;
  while (true) {
    int next = -1;
    for (int w : g.neighbors(order.back()))
      if (!seen[w]) next = w;
    if (next < 0) break;
    seen[next] = true;
    order.push_back(next);
  }
  return order;
}

}  // namespace detail

/// Streams the candidates of one family into sink(graph). Candidates outside
/// [min_rank, max_rank] are not produced; no level filtering happens here
/// beyond the optional prefix pruning of shape-labeling families.
template <class Sink>
void nominate(Family family, const std::vector<CoxeterGraph>& level1, const std::vector<int>& labels, Sink&& sink,
              const NominationOptions& opt = {}) {
  detail::check_labels(labels);
  auto emit = [&](const CoxeterGraph& g) {
    if (g.rank() >= opt.min_rank && g.rank() <= opt.max_rank) sink(g);
  };
  auto in_range = [&](int rank) { return rank >= opt.min_rank && rank <= opt.max_rank; };
  auto extend_all_subsets = [&](const CoxeterGraph& base) {
    if (!in_range(base.rank() + 1)) return;
    const int n = base.rank();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> attach;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) attach.push_back(v);
      detail::extend_vertex(base, attach, labels, emit);
    }
  };
  auto label_all = [&](const CoxeterGraph& shape) {
    if (!in_range(shape.rank())) return;
    if (opt.prune) {
      label_shape(shape, labels, 2, opt.zero_tol, emit);
    } else {
      label_shape(shape, labels, shape.rank(), opt.zero_tol, emit);
    }
  };

  switch (family) {
    case Family::FromK4: extend_all_subsets(special_k4()); break;
    case Family::FromK4minusE: extend_all_subsets(special_k4_minus_e()); break;
    case Family::FromK23: extend_all_subsets(special_k23()); break;
    case Family::TwoCycles: {
      label_all(detail::butterfly_shape());
      for (int a = 0; a <= 2; ++a)
        for (int b = a; b <= 2; ++b)
          for (int c = b; c <= 2; ++c)
            if (b >= 1 && 2 + a + b + c >= 5) label_all(detail::bfs_relabel(detail::theta_shape(a, b, c)));
      break;
    }
    case Family::Cycle:
      // Path of level 1 closed up through a new vertex joined to both ends.
      for (const auto& g : level1) {
        if (shape_of(g) != Shape::Path || !in_range(g.rank() + 1)) continue;
        const auto p = detail::path_order(g);
        detail::extend_vertex(g, {p.front(), p.back()}, labels, emit);
      }
      break;
    case Family::CycleTail1:
      for (const auto& g : level1) {
        if (!in_range(g.rank() + 1)) continue;
        const Shape s = shape_of(g);
        if (s == Shape::Cycle) {
          // Pendant edge on any vertex of a level-1 cycle.
          for (int v = 0; v < g.rank(); ++v) detail::extend_vertex(g, {v}, labels, emit);
        } else if (s == Shape::Tree && detail::leaves_of(g).size() == 3) {
          // Join two leaves of a three-leaf tree whose remaining leg has length 1.
          const auto leaves = detail::leaves_of(g);
          for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) {
              const int other = leaves[3 - i - j];
              if (g.degree(g.neighbors(other)[0]) != 3) continue;
              detail::extend_vertex(g, {leaves[i], leaves[j]}, labels, emit);
            }
        } else if (s == Shape::Path && g.rank() >= 3) {
          // New vertex joined to the second and the last vertex of a path.
          const auto p = detail::path_order(g);
          detail::extend_vertex(g, {p[1], p.back()}, labels, emit);
          detail::extend_vertex(g, {p[p.size() - 2], p.front()}, labels, emit);
        }
      }
      break;
    case Family::CycleTail2:
      // Extend the tail of a level-1 tailed cycle.
      for (const auto& g : level1) {
        if (shape_of(g) != Shape::TailedCycle || !in_range(g.rank() + 1)) continue;
        detail::extend_vertex(g, {detail::leaves_of(g).front()}, labels, emit);
      }
      break;
    case Family::CycleTwoTails:
      // Second pendant edge on the cycle of a level-1 tailed cycle.
      for (const auto& g : level1) {
        if (shape_of(g) != Shape::TailedCycle || !in_range(g.rank() + 1)) continue;
        for (int v : detail::cycle_vertices(g)) detail::extend_vertex(g, {v}, labels, emit);
      }
      break;
    case Family::Tree:
      for (const auto& g : level1) {
        const Shape s = shape_of(g);
        if ((s != Shape::Tree && s != Shape::Path) || !in_range(g.rank() + 1)) continue;
        for (int v = 0; v < g.rank(); ++v) detail::extend_vertex(g, {v}, labels, emit);
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Census

struct VertexClassCounts {
  int imaginary = 0;
  int real = 0;
  int surreal = 0;
  bool operator==(const VertexClassCounts&) const = default;
};

struct CensusEntry {
  CoxeterGraph graph{1};
  std::string key;
  Family family = Family::Tree;
  bool strict = false;
  VertexClassCounts vertex_classes;
  std::vector<double> weight_norms;  ///< B(omega_s, omega_s) per vertex
};

struct EnumOptions {
  double zero_tol = kDefaultZeroTol;
  int min_rank = 5;
  int max_rank = 11;
  unsigned jobs = 1;
  /// Shuffles the nominated candidates before recognition and dedup.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Direct recognition: level <= 2 but not level <= 1.
inline bool is_level2(const GramMatrix& b, double zero_tol = kDefaultZeroTol) {
  if (b.size() < 3) return false;
  return !is_level_at_most(b, 1, zero_tol) && is_level_at_most(b, 2, zero_tol);
}

inline bool is_level2(const CoxeterGraph& g, double zero_tol = kDefaultZeroTol) {
  return is_level2(gram_matrix(g), zero_tol);
}

/// Counts fundamental weights by norm: <= 0 imaginary, == 1 surreal, else real.
/// Norms above 1 are counted as real; callers check the bound separately.
inline VertexClassCounts count_vertex_classes(const std::vector<double>& norms) {
  VertexClassCounts c;
  for (double nrm : norms) {
    if (nrm <= 1e-9)
      ++c.imaginary;
    else if (std::abs(nrm - 1.0) <= 1e-9)
      ++c.surreal;
    else
      ++c.real;
  }
  return c;
}

inline CensusEntry make_entry(const CoxeterGraph& g, std::string key, Family family, double zero_tol) {
  CensusEntry e;
  e.graph = g;
  e.key = std::move(key);
  e.family = family;
  e.strict = is_strict_level2(g, zero_tol);
  const auto fw = fundamental_weights(gram_matrix(g));
  e.weight_norms.assign(fw.norms.data(), fw.norms.data() + fw.norms.size());
  e.vertex_classes = count_vertex_classes(e.weight_norms);
  return e;
}

/// Nominates candidates of every family, keeps those recognized as level 2
/// and deduplicates them by canonical key (the earliest family wins). Entries
/// are sorted by key.
inline std::vector<CensusEntry> enumerate_level2(const EnumOptions& opt = {}) {
  if (opt.max_rank > 11 || opt.min_rank < 5 || opt.min_rank > opt.max_rank)
    throw PreconditionError("enumerate_level2: ranks must satisfy 5 <= min_rank <= max_rank <= 11");
  const auto& labels = admissible_labels();
  const auto level1 = enumerate_level1(std::min(10, opt.max_rank - 1), labels, opt.zero_tol);

  struct Candidate {
    CoxeterGraph graph;
    Family family;
  };
  std::vector<Candidate> candidates;
  NominationOptions nopt{opt.min_rank, opt.max_rank, true, opt.zero_tol};
  for (Family f : kAllFamilies)
    nominate(f, level1, labels, [&](const CoxeterGraph& g) { candidates.push_back({g, f}); }, nopt);

  if (opt.shuffle_seed) {
    std::mt19937_64 rng(*opt.shuffle_seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
  }

  struct Hit {
    std::string key;
    Family family;
    std::size_t index;
  };
  auto parts = detail::parallel_chunks(candidates.size(), opt.jobs, [&](std::size_t begin, std::size_t end) {
    std::vector<Hit> hits;
    for (std::size_t i = begin; i < end; ++i)
      if (is_level2(candidates[i].graph, opt.zero_tol))
        hits.push_back({canonical_key(candidates[i].graph), candidates[i].family, i});
    return hits;
  });

  std::map<std::string, std::pair<Family, std::size_t>> best;
  for (const auto& part : parts)
    for (const auto& h : part) {
      auto it = best.find(h.key);
      if (it == best.end()) {
        best.emplace(h.key, std::pair{h.family, h.index});
      } else if (h.family < it->second.first ||
                 (h.family == it->second.first &&
                  canonical_key(candidates[h.index].graph) == h.key && h.index < it->second.second &&
                  !opt.shuffle_seed)) {
        it->second = {h.family, h.index};
      }
    }

  std::vector<CensusEntry> out;
  out.reserve(best.size());
  for (const auto& [key, hit] : best)
    out.push_back(make_entry(candidates[hit.second].graph, key, hit.first, opt.zero_tol));
  return out;
}

struct CensusReport {
  std::map<std::pair<Family, int>, int> by_family_rank;
  std::map<int, int> by_rank;
  int total = 0;
  int strict = 0;
  VertexClassCounts vertex_classes;
};

inline CensusReport census_report(const std::vector<CensusEntry>& entries) {
  CensusReport r;
  for (const auto& e : entries) {
    ++r.by_family_rank[{e.family, e.graph.rank()}];
    ++r.by_rank[e.graph.rank()];
    ++r.total;
    r.strict += e.strict ? 1 : 0;
    r.vertex_classes.imaginary += e.vertex_classes.imaginary;
    r.vertex_classes.real += e.vertex_classes.real;
    r.vertex_classes.surreal += e.vertex_classes.surreal;
  }
  return r;
}

inline std::string format_report(const CensusReport& r) {
  std::string out = "total=" + std::to_string(r.total) + " strict=" + std::to_string(r.strict) + "\n";
  out += "by rank:";
  for (auto [rank, c] : r.by_rank) out += " " + std::to_string(rank) + ":" + std::to_string(c);
  out += "\nby family and rank:\n";
  for (const auto& [fr, c] : r.by_family_rank)
    out += "  " + std::string(to_string(fr.first)) + " rank " + std::to_string(fr.second) + ": " + std::to_string(c) + "\n";
  out += "vertex classes: imaginary=" + std::to_string(r.vertex_classes.imaginary) +
         " real=" + std::to_string(r.vertex_classes.real) + " surreal=" + std::to_string(r.vertex_classes.surreal) + "\n";
  return out;
}

/// Re-verifies census entries independently of how they were nominated.
/// Returns one message per violated invariant.
inline std::vector<std::string> census_invariant_failures(const std::vector<CensusEntry>& entries,
                                                          double zero_tol = kDefaultZeroTol) {
  std::vector<std::string> failures;
  std::set<std::string> keys;
  for (const auto& e : entries) {
    const std::string tag = "[" + e.key + "] ";
    if (!keys.insert(e.key).second) failures.push_back(tag + "duplicate canonical key");
    if (canonical_key(e.graph) != e.key) failures.push_back(tag + "stored key does not match graph");
    if (e.graph.rank() < 5 || e.graph.rank() > 11) failures.push_back(tag + "rank outside 5..11");
    if (!is_connected(e.graph)) failures.push_back(tag + "disconnected");
    if (level(e.graph, zero_tol) != 2) failures.push_back(tag + "not of level 2 under direct recognition");
    for (int v = 0; v < e.graph.rank(); ++v) {
      std::vector<int> rest;
      for (int u = 0; u < e.graph.rank(); ++u)
        if (u != v) rest.push_back(u);
      const auto sub = induced_subgraph(e.graph, rest);
      for (const auto& comp : connected_components(sub))
        if (comp.size() >= 2 && level(induced_subgraph(sub, comp), zero_tol) > 1)
          failures.push_back(tag + "vertex deletion leaves a component of level > 1");
    }
    for (const auto& edge : e.graph.edges())
      if (!edge.label.is_finite() || edge.label.m < 3 || edge.label.m > 6)
        failures.push_back(tag + "label outside {3,4,5,6}");
    for (double nrm : e.weight_norms)
      if (nrm > 1.0 + 1e-9) failures.push_back(tag + "fundamental weight norm above 1");
  }
  return failures;
}

}  // namespace coxpack
