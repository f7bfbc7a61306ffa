#pragma once
// Independent reference computations used to pin library results.

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxpack/form.hpp"
#include "coxpack/graph.hpp"

namespace oracle {

using coxpack::CoxeterGraph;

// ---------------------------------------------------------------------------
// Closed forms

/// Universal rank-n system: B = 2I - J, so B^{-1} = I/2 + J/(2(2 - n)).
inline Eigen::MatrixXd universal_inverse(int n) {
  return 0.5 * Eigen::MatrixXd::Identity(n, n) + Eigen::MatrixXd::Constant(n, n, 0.5 / (2.0 - n));
}

/// For n = 4 the fundamental weights have norm 1/4 and pairwise products -1/4.
inline constexpr double kUniversal4WeightNorm = 0.25;
inline constexpr double kUniversal4WeightProduct = -0.25;

/// Positive roots of the dihedral group I2(m) in the simple-root basis:
/// (sin((k+1)t), sin(k t)) / sin(t) for k = 0..m-1 with t = pi/m.
inline std::vector<Eigen::Vector2d> dihedral_positive_roots(int m) {
  const double t = std::numbers::pi / m;
  std::vector<Eigen::Vector2d> out;
  for (int k = 0; k < m; ++k)
    out.emplace_back(std::sin((k + 1) * t) / std::sin(t), std::sin(k * t) / std::sin(t));
  return out;
}

/// Brute-force closure of {I} under the two reflection matrices of I2(m),
/// compared entrywise at 1e-9.
inline int dihedral_group_order(int m) {
  const double c = -std::cos(std::numbers::pi / m);
  Eigen::Matrix2d s0, s1;
  s0 << -1, -2 * c, 0, 1;
  s1 << 1, 0, -2 * c, -1;
  std::vector<Eigen::Matrix2d> seen{Eigen::Matrix2d::Identity()};
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (const auto& s : {s0, s1}) {
      Eigen::Matrix2d p = seen[i] * s;
      bool dup = false;
      for (const auto& q : seen) dup = dup || (p - q).cwiseAbs().maxCoeff() < 1e-9;
      if (!dup) seen.push_back(p);
      if (seen.size() > 1000) return -1;
    }
  return static_cast<int>(seen.size());
}

// ---------------------------------------------------------------------------
// Exhaustive census

/// Connected graphs with labels in {3,4,5,6} grown one vertex at a time:
/// every connected graph has a non-cut vertex, and deleting a vertex lowers
/// the level by at most one, so level <= r graphs on n vertices are one-vertex
/// extensions of connected level <= r - 1 ... r graphs on n - 1 vertices.
/// Independent of the family-based nomination.
class ExhaustiveCensus {
 public:
  explicit ExhaustiveCensus(double tol) : tol_(tol) {}

  /// Canonical keys of connected graphs of level exactly 2 on n vertices for
  /// every n in [min_n, max_n].
  std::map<std::string, CoxeterGraph> level2(int min_n, int max_n) {
    std::vector<std::vector<CoxeterGraph>> l0(max_n + 1), l1(max_n + 1);
    l0[1].push_back(CoxeterGraph(1));
    std::map<std::string, CoxeterGraph> out;
    for (int n = 2; n <= max_n; ++n) {
      for (auto& [k, g] : extend(l0[n - 1], 0)) l0[n].push_back(g);
      for (auto& [k, g] : extend(l0[n - 1], 1))
        if (!coxpack::is_level_at_most(g, 0, tol_)) l1[n].push_back(g);
      if (n < min_n) continue;
      std::vector<CoxeterGraph> parents = l0[n - 1];
      parents.insert(parents.end(), l1[n - 1].begin(), l1[n - 1].end());
      for (auto& [k, g] : extend(parents, 2))
        if (!coxpack::is_level_at_most(g, 1, tol_)) out.emplace(k, g);
    }
    return out;
  }

 private:
  static constexpr int kLabels[5] = {0, 3, 4, 5, 6};  // 0: no edge
  double tol_;

  std::map<std::string, CoxeterGraph> extend(const std::vector<CoxeterGraph>& parents, int r) const {
    std::map<std::string, CoxeterGraph> out;
    for (const auto& p : parents) {
      const int n = p.rank() + 1;
      Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);
      for (const auto& e : p.edges()) b(e.u, e.v) = b(e.v, e.u) = e.label.gram_entry();
      std::vector<int> choice(n - 1, 0);
      std::function<void(int)> rec = [&](int k) {
        if (k > 0) {
          // Vertices 0..k-1 of the parent plus the new vertex are fully decided.
          std::vector<int> keep;
          for (int i = 0; i < k; ++i) keep.push_back(i);
          keep.push_back(n - 1);
          const int m = static_cast<int>(keep.size());
          const int bound = std::max(0, r - (n - m));
          if (bound < m && !coxpack::is_level_at_most(coxpack::GramMatrix(coxpack::detail::principal(b, keep)), bound, tol_))
            return;
        }
        if (k == n - 1) {
          bool any = false;
          for (int c : choice) any = any || c != 0;
          if (!any) return;
          CoxeterGraph h(n);
          for (const auto& e : p.edges()) h.set_edge(e.u, e.v, e.label);
          for (int i = 0; i < n - 1; ++i)
            if (choice[i]) h.set_edge(i, n - 1, coxpack::EdgeLabel::finite(choice[i]));
          out.emplace(coxpack::canonical_key(h), h);
          return;
        }
        for (int c : kLabels) {
          choice[k] = c;
          b(k, n - 1) = b(n - 1, k) = c ? -std::cos(std::numbers::pi / c) : 0.0;
          rec(k + 1);
        }
        b(k, n - 1) = b(n - 1, k) = 0.0;
        choice[k] = 0;
      };
      rec(0);
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Level by brute force over all subsets (no early exits shared with the library)

inline int brute_force_level(const CoxeterGraph& g, double tol) {
  const int n = g.rank();
  const auto b = coxpack::gram_matrix(g).matrix();
  int smallest_bad = n + 1;  // non-PSD is inherited by supersets
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) keep.push_back(i);
    Eigen::MatrixXd sub(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < keep.size(); ++j) sub(i, j) = b(keep[i], keep[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) smallest_bad = std::min(smallest_bad, static_cast<int>(keep.size()));
  }
  // Level r: all subsets of size n - r are PSD, i.e. n - r < smallest_bad.
  return std::max(0, n - smallest_bad + 1);
}

}  // namespace oracle
