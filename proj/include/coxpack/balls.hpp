#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coxpack/detail/parallel.hpp"
#include "coxpack/detail/vector_index.hpp"
#include "coxpack/errors.hpp"
#include "coxpack/form.hpp"
#include "coxpack/orbit.hpp"

namespace coxpack {

/// Basis change M with M^T B M = diag(1, ..., 1, -1). Frame coordinates of a
/// vector x are M^{-1} x; the last axis is time-like and oriented so that
/// light-like vectors of positive height have positive last coordinate.
struct LorentzFrame {
  Eigen::MatrixXd basis_change;
  Eigen::MatrixXd inverse;

  int size() const { return static_cast<int>(basis_change.rows()); }
  Eigen::VectorXd to_frame(const Eigen::VectorXd& x) const { return inverse * x; }
  Eigen::VectorXd from_frame(const Eigen::VectorXd& y) const { return basis_change * y; }
};

inline LorentzFrame lorentz_frame(const GramMatrix& b) {
  const int n = b.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b.matrix());
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  if (!(ev[0] < -kDefaultZeroTol) || (n > 1 && !(ev[1] > kDefaultZeroTol)))
    throw PreconditionError("lorentz_frame: form is not Lorentzian");
  LorentzFrame f;
  f.basis_change.resize(n, n);
  for (int i = 1; i < n; ++i) f.basis_change.col(i - 1) = solver.eigenvectors().col(i) / std::sqrt(ev[i]);
  f.basis_change.col(n - 1) = solver.eigenvectors().col(0) / std::sqrt(-ev[0]);
  const double h = height(f.basis_change.col(n - 1));
  const double bary = f.basis_change.col(n - 1).dot(Eigen::VectorXd::Constant(n, 1.0 / n));
  if (h < 0 || (h == 0 && bary < 0)) f.basis_change.col(n - 1) *= -1.0;
  f.inverse = f.basis_change.inverse();
  return f;
}

/// Max-entry residual of M^T B M against diag(1, ..., 1, -1).
inline double frame_residual(const LorentzFrame& f, const GramMatrix& b) {
  const int n = b.size();
  Eigen::MatrixXd target = Eigen::MatrixXd::Identity(n, n);
  target(n - 1, n - 1) = -1.0;
  return (f.basis_change.transpose() * b.matrix() * f.basis_change - target).cwiseAbs().maxCoeff();
}

/// Cap on the unit sphere S^{n-2}, the sphere model of the projective light cone.
struct SphericalCap {
  Eigen::VectorXd center;
  double angular_radius = 0.0;
};

/// ball(x) = { light rays r : B(x, r) <= 0 }. With x normalized and written as
/// (v, t) in frame coordinates, the rays (u, 1) satisfy <u, v> <= t.
inline SphericalCap cap_of(const Eigen::VectorXd& x, const LorentzFrame& frame, const GramMatrix& b) {
  const Eigen::VectorXd y = frame.to_frame(normalize_spacelike(x, b));
  const int n = static_cast<int>(y.size());
  const Eigen::VectorXd v = y.head(n - 1);
  const double t = y[n - 1];
  const double vn = v.norm();
  return {-v / vn, std::acos(std::clamp(-t / vn, -1.0, 1.0))};
}

inline double angular_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

/// Ball in R^{n-2} in inversive coordinates. curvature > 0: ordinary ball;
/// < 0: complement of an open ball; == 0 with `half_space`: the half-space
/// { z : <z, curvature_center> >= offset } with curvature_center a unit normal.
struct EuclideanBall {
  double curvature = 0.0;
  Eigen::VectorXd curvature_center;
  bool half_space = false;
  double offset = 0.0;

  Eigen::VectorXd center() const { return curvature_center / curvature; }
  double radius() const { return 1.0 / std::abs(curvature); }
};

/// Stereographic projection from the pole e_{pole_axis} onto the orthogonal
/// hyperplane through the origin.
inline EuclideanBall stereographic(const SphericalCap& cap, int pole_axis) {
  const int d = static_cast<int>(cap.center.size());
  if (pole_axis < 0 || pole_axis >= d) throw PreconditionError("stereographic: pole axis out of range");
  const double cp = cap.center[pole_axis];
  Eigen::VectorXd perp(d - 1);
  for (int i = 0, k = 0; i < d; ++i)
    if (i != pole_axis) perp[k++] = cap.center[i];
  const double theta = cap.angular_radius;
  const double st = std::sin(theta);
  const double ct = std::cos(theta);

  EuclideanBall ball;
  if (std::abs(std::acos(std::clamp(cp, -1.0, 1.0)) - theta) <= 1e-9) {
    ball.half_space = true;
    ball.curvature = 0.0;
    const double pn = perp.norm();
    ball.curvature_center = perp / pn;
    ball.offset = ct / pn;
    return ball;
  }
  ball.curvature = (ct - cp) / st;
  ball.curvature_center = perp / st;
  return ball;
}

/// Rotation of the sphere applied before projecting, used when a cap boundary
/// passes too close to the pole.
inline Eigen::MatrixXd pole_rotation(int dim, int attempt) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dim, dim);
  if (attempt == 0 || dim < 2) return r;
  const double a = 0.1 * attempt;
  const int p = dim - 1;
  r(0, 0) = std::cos(a);
  r(0, p) = -std::sin(a);
  r(p, 0) = std::sin(a);
  r(p, p) = std::cos(a);
  return r;
}

struct ProjectedBalls {
  std::vector<EuclideanBall> balls;
  int rotation_attempt = 0;
};

/// Projects all caps from the last axis; if any boundary passes within 1e-6 of
/// the pole the sphere is rotated by a fixed angle and the projection retried
/// (up to three times).
inline ProjectedBalls stereographic_all(const std::vector<SphericalCap>& caps) {
  ProjectedBalls out;
  if (caps.empty()) return out;
  const int dim = static_cast<int>(caps.front().center.size());
  for (int attempt = 0; attempt <= 3; ++attempt) {
    const Eigen::MatrixXd rot = pole_rotation(dim, attempt);
    bool near_pole = false;
    std::vector<SphericalCap> rotated;
    for (const auto& c : caps) {
      SphericalCap rc{rot * c.center, c.angular_radius};
      if (std::abs(std::acos(std::clamp(rc.center[dim - 1], -1.0, 1.0)) - rc.angular_radius) < 1e-6) near_pole = true;
      rotated.push_back(std::move(rc));
    }
    if (near_pole && attempt < 3) continue;
    out.rotation_attempt = attempt;
    for (const auto& c : rotated) out.balls.push_back(stereographic(c, dim - 1));
    return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pair relations

/// -B(x^, y^), the separation of ball(x) and ball(y): 1 for tangent balls.
inline double separation(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const GramMatrix& b) {
  return -b.form(normalize_spacelike(x, b), normalize_spacelike(y, b));
}

struct PairRelation {
  enum class Kind { Disjoint, Tangent, Transversal, DeepIntersect };
  Kind kind = Kind::Disjoint;
  double separation = 0.0;
};

inline std::string_view to_string(PairRelation::Kind k) {
  switch (k) {
    case PairRelation::Kind::Disjoint: return "disjoint";
    case PairRelation::Kind::Tangent: return "tangent";
    case PairRelation::Kind::Transversal: return "transversal";
    case PairRelation::Kind::DeepIntersect: return "deep";
  }
  return "?";
}

inline PairRelation::Kind relation_of(double s, double tol = 1e-9) {
  if (s > 1.0 + tol) return PairRelation::Kind::Disjoint;
  if (std::abs(s - 1.0) <= tol) return PairRelation::Kind::Tangent;
  if (s < -tol) return PairRelation::Kind::DeepIntersect;
  return PairRelation::Kind::Transversal;
}

inline PairRelation classify_pair(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const GramMatrix& b) {
  const double s = separation(x, y, b);
  return {relation_of(s), s};
}

// ---------------------------------------------------------------------------
// Clusters

struct ClusterReport {
  bool is_packing = true;
  double min_separation = std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, int>> violating_pairs;  ///< separation < 1 - 1e-9
  std::vector<std::pair<int, int>> deep_pairs;       ///< separation < -1e-9
  std::size_t violating_count = 0;
  std::size_t deep_count = 0;
};

/// Pairwise separations over distinct space-like weights. Pair indices refer
/// to the input order; at most `max_listed` pairs of each kind are kept, the
/// counts are exact.
inline ClusterReport validate_cluster(const std::vector<WeightRecord>& weights, const GramMatrix& b,
                                      unsigned jobs = 1, std::size_t max_listed = 100000) {
  std::vector<int> ids;
  std::vector<Eigen::VectorXd> unit;
  detail::VectorIndex seen;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].klass != NormClass::SpaceLike)
      throw PreconditionError("validate_cluster: weights must be space-like");
    Eigen::VectorXd u = normalize_spacelike(weights[i].vector, b);
    if (!seen.insert(u).second) continue;
    ids.push_back(static_cast<int>(i));
    unit.push_back(std::move(u));
  }
  ClusterReport report;
  if (unit.size() < 2) return report;

  const Eigen::MatrixXd& bm = b.matrix();
  std::vector<Eigen::VectorXd> bu;
  bu.reserve(unit.size());
  for (const auto& u : unit) bu.push_back(bm * u);

  struct Partial {
    double min_sep = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> violating, deep;
    std::size_t violating_count = 0, deep_count = 0;
  };
  auto parts = detail::parallel_chunks(unit.size(), jobs, [&](std::size_t begin, std::size_t end) {
    Partial p;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < unit.size(); ++j) {
        const double s = -unit[i].dot(bu[j]);
        p.min_sep = std::min(p.min_sep, s);
        if (s < 1.0 - 1e-9) {
          ++p.violating_count;
          if (p.violating.size() < max_listed) p.violating.emplace_back(ids[i], ids[j]);
        }
        if (s < -1e-9) {
          ++p.deep_count;
          if (p.deep.size() < max_listed) p.deep.emplace_back(ids[i], ids[j]);
        }
      }
    }
    return p;
  });
  for (auto& p : parts) {
    report.min_separation = std::min(report.min_separation, p.min_sep);
    report.violating_count += p.violating_count;
    report.deep_count += p.deep_count;
    for (auto& v : p.violating)
      if (report.violating_pairs.size() < max_listed) report.violating_pairs.push_back(v);
    for (auto& v : p.deep)
      if (report.deep_pairs.size() < max_listed) report.deep_pairs.push_back(v);
  }
  std::sort(report.violating_pairs.begin(), report.violating_pairs.end());
  std::sort(report.deep_pairs.begin(), report.deep_pairs.end());
  report.is_packing = report.violating_count == 0;
  return report;
}

/// min over space-like weights of B(p, w^); negative when p lies inside some
/// ball. +inf for an empty weight set.
inline double residual_margin(const ProjectivePoint& p, const std::vector<WeightRecord>& weights, const GramMatrix& b) {
  if (p.at_infinity) throw PreconditionError("residual_margin: point at infinity");
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& w : weights) {
    if (w.klass != NormClass::SpaceLike) continue;
    margin = std::min(margin, b.form(p.coords, normalize_spacelike(w.vector, b)));
  }
  return margin;
}

}  // namespace coxpack
