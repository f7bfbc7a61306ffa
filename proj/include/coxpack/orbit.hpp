#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxpack/detail/vector_index.hpp"
#include "coxpack/errors.hpp"
#include "coxpack/form.hpp"
#include "coxpack/graph.hpp"

namespace coxpack {

/// Cap on the number of records (roots, group elements) an orbit enumeration
/// may produce before failing with OrbitCapExceeded.
struct OrbitLimits {
  std::size_t max_records = 5'000'000;
};

inline double height(const Eigen::VectorXd& x) { return x.sum(); }

inline Eigen::VectorXd reflect(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha, const GramMatrix& b) {
  const double aa = b.norm(alpha);
  if (std::abs(aa) <= 1e-12) throw PreconditionError("reflect: isotropic vector");
  return x - (2.0 * b.form(x, alpha) / aa) * alpha;
}

/// Reflection in the simple root alpha_s: only coordinate s changes.
inline Eigen::VectorXd simple_reflect(const Eigen::VectorXd& x, int s, const GramMatrix& b) {
  Eigen::VectorXd y = x;
  y[s] -= 2.0 * b.matrix().row(s).dot(x);
  return y;
}

/// Matrix of the simple reflection s: I - 2 e_s (row s of B).
inline Eigen::MatrixXd reflection_matrix(int s, const GramMatrix& b) {
  const int n = b.size();
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  r.row(s) -= 2.0 * b.matrix().row(s);
  return r;
}

// ---------------------------------------------------------------------------
// Roots

struct RootRecord {
  Eigen::VectorXd vector;
  int depth = 1;
  double height = 1.0;
};

namespace detail {

inline void check_cap(std::size_t count, const OrbitLimits& limits) {
  if (count > limits.max_records)
    throw OrbitCapExceeded("orbit enumeration exceeded " + std::to_string(limits.max_records) + " records");
}

}  // namespace detail

/// Positive roots of depth <= d by layered BFS. Layer k+1 holds the new
/// positive images of layer k under simple reflections, so the layer index is
/// the depth.
inline std::vector<RootRecord> roots_up_to_depth(const GramMatrix& b, int d, const OrbitLimits& limits = {}) {
  if (d < 1) throw PreconditionError("roots_up_to_depth: depth must be >= 1");
  const int n = b.size();
  detail::VectorIndex seen;
  std::vector<RootRecord> out;
  for (int s = 0; s < n; ++s) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, s);
    seen.insert(e);
    out.push_back({e, 1, 1.0});
  }
  std::size_t begin = 0;
  for (int depth = 2; depth <= d; ++depth) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int s = 0; s < n; ++s) {
        Eigen::VectorXd y = simple_reflect(out[i].vector, s, b);
        if (y.minCoeff() < -1e-9) continue;
        if (!seen.insert(y).second) continue;
        const double h = height(y);
        out.push_back({std::move(y), depth, h});
        detail::check_cap(out.size(), limits);
      }
    }
    begin = end;
  }
  return out;
}

inline std::vector<RootRecord> roots_up_to_depth(const CoxeterGraph& g, int d, const OrbitLimits& limits = {}) {
  return roots_up_to_depth(gram_matrix(g), d, limits);
}

// ---------------------------------------------------------------------------
// Group elements

struct GroupElement {
  Eigen::MatrixXd matrix;
  int length = 0;
  int parent = -1;     ///< element this one extends by one generator on the right
  int generator = -1;  ///< last generator of the word
};

/// All group elements of length <= L, in BFS (shortlex-layer) order. Element
/// e*s is obtained by right multiplication; `right[e][s]` is its index or -1
/// when it lies outside the ball.
class GroupBall {
 public:
  std::vector<GroupElement> elements;
  std::vector<std::vector<int>> right;
  int max_length = 0;

  std::size_t size() const { return elements.size(); }

  std::vector<int> word(int e) const {
    std::vector<int> w;
    for (; elements[e].parent >= 0; e = elements[e].parent) w.push_back(elements[e].generator);
    std::reverse(w.begin(), w.end());
    return w;
  }
};

namespace detail {

inline Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

}  // namespace detail

/// Breadth-first enumeration of group elements; elements are deduplicated by
/// their reflection-representation matrices.
inline GroupBall group_ball(const GramMatrix& b, int L, const OrbitLimits& limits = {}) {
  if (L < 0) throw PreconditionError("group_ball: length must be >= 0");
  const int n = b.size();
  std::vector<Eigen::MatrixXd> gens;
  for (int s = 0; s < n; ++s) gens.push_back(reflection_matrix(s, b));

  GroupBall ball;
  ball.max_length = L;
  detail::VectorIndex seen;
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  seen.insert(detail::flatten(id));
  ball.elements.push_back({id, 0, -1, -1});
  ball.right.emplace_back(n, -1);

  std::size_t begin = 0;
  for (int len = 0; len <= L; ++len) {
    const std::size_t end = ball.elements.size();
    for (std::size_t e = begin; e < end; ++e) {
      for (int s = 0; s < n; ++s) {
        Eigen::MatrixXd prod = ball.elements[e].matrix * gens[s];
        const Eigen::VectorXd flat = detail::flatten(prod);
        int target = -1;
        if (auto hit = seen.find(flat)) {
          target = static_cast<int>(*hit);
        } else if (len < L) {
          target = static_cast<int>(seen.insert(flat).first);
          ball.elements.push_back({std::move(prod), len + 1, static_cast<int>(e), s});
          ball.right.emplace_back(n, -1);
          detail::check_cap(ball.elements.size(), limits);
        }
        ball.right[e][s] = target;
      }
    }
    begin = end;
  }
  return ball;
}

// ---------------------------------------------------------------------------
// Weights

enum class NormClass { SpaceLike, TimeLike, LightLike };

inline std::string_view to_string(NormClass k) {
  switch (k) {
    case NormClass::SpaceLike: return "space-like";
    case NormClass::TimeLike: return "time-like";
    case NormClass::LightLike: return "light-like";
  }
  return "?";
}

inline NormClass norm_class(double fundamental_norm) {
  const double tol = 1e-9 * std::max(1.0, std::abs(fundamental_norm));
  if (fundamental_norm > tol) return NormClass::SpaceLike;
  if (fundamental_norm < -tol) return NormClass::TimeLike;
  return NormClass::LightLike;
}

struct WeightRecord {
  Eigen::VectorXd vector;
  int word_length = 0;
  double norm = 0.0;
  NormClass klass = NormClass::SpaceLike;
  int color = 0;
};

/// Distinct weights w(omega_s) over a precomputed group ball, each tagged with
/// the shortest length producing it.
inline std::vector<WeightRecord> weights_from_ball(const GramMatrix& b, const FundamentalWeights& fw,
                                                   const GroupBall& ball) {
  const int n = b.size();
  detail::VectorIndex seen;
  std::vector<WeightRecord> out;
  for (const auto& el : ball.elements) {
    for (int s = 0; s < n; ++s) {
      Eigen::VectorXd w = el.matrix * fw.vectors.col(s);
      if (!seen.insert(w).second) continue;
      const double nrm = b.norm(w);
      out.push_back({std::move(w), el.length, nrm, norm_class(fw.norms[s]), s});
    }
  }
  return out;
}

inline std::vector<WeightRecord> weights_up_to_length(const GramMatrix& b, int L, const OrbitLimits& limits = {}) {
  if (L < 0) throw PreconditionError("weights_up_to_length: length must be >= 0");
  const auto fw = fundamental_weights(b);
  return weights_from_ball(b, fw, group_ball(b, L, limits));
}

inline std::vector<WeightRecord> weights_up_to_length(const CoxeterGraph& g, int L, const OrbitLimits& limits = {}) {
  return weights_up_to_length(gram_matrix(g), L, limits);
}

inline std::vector<WeightRecord> space_like(const std::vector<WeightRecord>& weights) {
  std::vector<WeightRecord> out;
  for (const auto& w : weights)
    if (w.klass == NormClass::SpaceLike) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------
// Projective picture

struct ProjectivePoint {
  Eigen::VectorXd coords;  ///< x / h(x); for points at infinity, x / |x|
  bool at_infinity = false;
};

inline ProjectivePoint projectivize(const Eigen::VectorXd& x) {
  if (x.size() == 0 || x.cwiseAbs().maxCoeff() == 0.0) throw PreconditionError("projectivize: zero vector");
  const double h = height(x);
  if (std::abs(h) > 1e-12) return {x / h, false};
  return {x.normalized(), true};
}

/// x / sqrt(B(x, x)) for a space-like x.
inline Eigen::VectorXd normalize_spacelike(const Eigen::VectorXd& x, const GramMatrix& b) {
  const double q = b.norm(x);
  if (!(q > 1e-12)) throw PreconditionError("normalize_spacelike: vector is not space-like");
  return x / std::sqrt(q);
}

struct LimitSource {
  enum class Kind { Roots, Weights };
  Kind kind = Kind::Roots;
  int size = 1;  ///< root depth or weight word length

  static LimitSource roots(int depth) { return {Kind::Roots, depth}; }
  static LimitSource weights(int length) { return {Kind::Weights, length}; }
};

struct LimitSample {
  std::vector<ProjectivePoint> points;
  LimitSource source;
  double quadratic_residual = 0.0;  ///< max |B(p, p)| over the points
};

inline double quadratic_residual(const std::vector<ProjectivePoint>& points, const GramMatrix& b) {
  double r = 0.0;
  for (const auto& p : points)
    if (!p.at_infinity) r = std::max(r, std::abs(b.norm(p.coords)));
  return r;
}

/// Projectivized deepest shell of roots (depth exactly d) or weights (word
/// length exactly L, nonzero height).
inline LimitSample limit_sample(const CoxeterGraph& g, LimitSource src, const OrbitLimits& limits = {}) {
  const auto b = gram_matrix(g);
  if (type_of(signature(b)) != TypeClass::Lorentzian) throw PreconditionError("limit_sample: graph is not Lorentzian");
  LimitSample sample;
  sample.source = src;
  if (src.kind == LimitSource::Kind::Roots) {
    for (const auto& r : roots_up_to_depth(b, src.size, limits))
      if (r.depth == src.size) sample.points.push_back(projectivize(r.vector));
  } else {
    for (const auto& w : weights_up_to_length(b, src.size, limits))
      if (w.word_length == src.size && std::abs(height(w.vector)) > 1e-9) sample.points.push_back(projectivize(w.vector));
  }
  sample.quadratic_residual = quadratic_residual(sample.points, b);
  return sample;
}

}  // namespace coxpack
