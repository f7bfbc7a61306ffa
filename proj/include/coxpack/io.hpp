#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "coxpack/balls.hpp"
#include "coxpack/census.hpp"
#include "coxpack/complex.hpp"
#include "coxpack/errors.hpp"
#include "coxpack/form.hpp"
#include "coxpack/graph.hpp"
#include "coxpack/orbit.hpp"

namespace coxpack::io {

using nlohmann::json;

inline json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Eigen::VectorXd(m.row(i).transpose())));
  return rows;
}

inline json to_json(const ProjectivePoint& p) {
  return {{"coords", to_json(p.coords)}, {"at_infinity", p.at_infinity}};
}

// ---------------------------------------------------------------------------
// Orbits

inline json roots_json(const CoxeterGraph& g, const std::vector<RootRecord>& roots, int depth) {
  const auto b = gram_matrix(g);
  json recs = json::array();
  std::vector<ProjectivePoint> deepest;
  double min_h = std::numeric_limits<double>::infinity();
  for (const auto& r : roots) {
    const auto p = projectivize(r.vector);
    if (r.depth == depth) {
      deepest.push_back(p);
      min_h = std::min(min_h, r.height);
    }
    recs.push_back({{"coords", to_json(r.vector)}, {"depth", r.depth}, {"height", r.height}, {"projective", to_json(p)}});
  }
  json summary = {{"count", roots.size()},
                  {"deepest_shell_size", deepest.size()},
                  {"deepest_quadratic_residual", quadratic_residual(deepest, b)}};
  if (!deepest.empty()) summary["deepest_min_height"] = min_h;
  return {{"graph", coxpack::to_json(g)}, {"depth", depth}, {"roots", recs}, {"summary", summary}};
}

inline json weights_json(const CoxeterGraph& g, const std::vector<WeightRecord>& weights, int length) {
  const auto b = gram_matrix(g);
  json recs = json::array();
  std::vector<ProjectivePoint> shell;
  for (const auto& w : weights) {
    json rec = {{"coords", to_json(w.vector)},
                {"word_length", w.word_length},
                {"color", w.color},
                {"height", height(w.vector)},
                {"norm", w.norm},
                {"class", std::string(to_string(w.klass))}};
    const auto p = projectivize(w.vector);
    rec["projective"] = to_json(p);
    if (w.word_length == length && !p.at_infinity) shell.push_back(p);
    recs.push_back(std::move(rec));
  }
  json summary = {{"count", weights.size()},
                  {"deepest_shell_size", shell.size()},
                  {"deepest_quadratic_residual", quadratic_residual(shell, b)}};
  return {{"graph", coxpack::to_json(g)}, {"length", length}, {"weights", recs}, {"summary", summary}};
}

// ---------------------------------------------------------------------------
// Packings

struct PackedBall {
  int color = 0;
  int word_length = 0;
  SphericalCap cap;
  EuclideanBall ball;
};

struct Packing {
  LorentzFrame frame;
  std::vector<PackedBall> balls;
  ClusterReport report;
  int rotation_attempt = 0;
};

/// Balls of all distinct space-like weights of word length <= L.
inline Packing build_packing(const CoxeterGraph& g, int L, const OrbitLimits& limits = {}, unsigned jobs = 1) {
  const auto b = gram_matrix(g);
  if (type_of(signature(b)) != TypeClass::Lorentzian) throw PreconditionError("packing: graph is not Lorentzian");
  Packing p;
  p.frame = lorentz_frame(b);
  std::vector<WeightRecord> ws;
  detail::VectorIndex seen;
  for (auto& w : space_like(weights_up_to_length(b, L, limits)))
    if (seen.insert(normalize_spacelike(w.vector, b)).second) ws.push_back(std::move(w));
  p.report = validate_cluster(ws, b, jobs);
  std::vector<SphericalCap> caps;
  for (const auto& w : ws) caps.push_back(cap_of(w.vector, p.frame, b));
  auto projected = stereographic_all(caps);
  p.rotation_attempt = projected.rotation_attempt;
  for (std::size_t i = 0; i < ws.size(); ++i)
    p.balls.push_back({ws[i].color, ws[i].word_length, caps[i], projected.balls[i]});
  return p;
}

inline json report_json(const ClusterReport& r) {
  json j = {{"is_packing", r.is_packing},
            {"violating_pairs", r.violating_count},
            {"deep_pairs", r.deep_count}};
  j["min_separation"] = std::isfinite(r.min_separation) ? json(r.min_separation) : json(nullptr);
  return j;
}

inline json packing_json(const Packing& p) {
  json balls = json::array();
  for (const auto& pb : p.balls) {
    json b = {{"color", pb.color},
              {"word_length", pb.word_length},
              {"cap_center", to_json(pb.cap.center)},
              {"cap_radius", pb.cap.angular_radius},
              {"curvature", pb.ball.curvature},
              {"curvature_center", to_json(pb.ball.curvature_center)}};
    if (pb.ball.half_space) {
      b["half_space"] = true;
      b["offset"] = pb.ball.offset;
    }
    balls.push_back(std::move(b));
  }
  return {{"frame", to_json(p.frame.basis_change)},
          {"balls", balls},
          {"validation", report_json(p.report)},
          {"pole_rotation_attempt", p.rotation_attempt}};
}

/// Rendering options for rank-4 disk packings.
struct RenderSpec {
  int orbit_length = 6;
  double min_radius = 0.0;  ///< disks smaller than this (in picture units) are dropped
  int width = 800;
  int height = 800;
};

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s = buf;
  return s == "-0.0000" ? "0.0000" : s;
}

inline const char* palette(int color) {
  static constexpr std::array<const char*, 8> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                        "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
  return colors[static_cast<std::size_t>(color) % colors.size()];
}

}  // namespace detail

/// SVG of the Euclidean disks of a rank-4 packing. Output depends only on the
/// packing and the spec, so it is byte-for-byte reproducible.
inline std::string render_svg(const Packing& p, const RenderSpec& spec) {
  if (p.frame.size() != 4) throw PreconditionError("render_svg: disk pictures need rank 4");
  if (spec.orbit_length < 0 || spec.min_radius < 0) throw PreconditionError("render_svg: invalid render spec");

  // Viewport: the outer boundary circle when some ball is a disk complement,
  // otherwise the disks of the fundamental chamber and its neighbours.
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  auto extend = [&](const EuclideanBall& b) {
    const Eigen::VectorXd c = b.center();
    const double r = b.radius();
    x0 = std::min(x0, c[0] - r), x1 = std::max(x1, c[0] + r);
    y0 = std::min(y0, c[1] - r), y1 = std::max(y1, c[1] + r);
  };
  for (const auto& pb : p.balls)
    if (!pb.ball.half_space && pb.ball.curvature < 0) extend(pb.ball);
  if (!std::isfinite(x0))
    for (const auto& pb : p.balls)
      if (!pb.ball.half_space && pb.ball.curvature > 0 && pb.word_length <= 1) extend(pb.ball);
  if (!std::isfinite(x0)) x0 = y0 = -1, x1 = y1 = 1;
  const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
  x0 -= pad, y0 -= pad, x1 += pad, y1 += pad;
  const double scale = std::min(spec.width / (x1 - x0), spec.height / (y1 - y0));
  auto sx = [&](double x) { return (x - x0) * scale; };
  auto sy = [&](double y) { return (y1 - y) * scale; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\">\n";
  out += "<!-- packing validation: is_packing=" + std::string(p.report.is_packing ? "true" : "false") +
         " balls=" + std::to_string(p.balls.size()) + " violating_pairs=" + std::to_string(p.report.violating_count) +
         " deep_pairs=" + std::to_string(p.report.deep_count) + " min_separation=" +
         (std::isfinite(p.report.min_separation) ? detail::fmt(p.report.min_separation) : std::string("inf")) +
         " orbit_length=" + std::to_string(spec.orbit_length) + " -->\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Complements and half-spaces first, then disks from large to small.
  std::vector<const PackedBall*> order;
  for (const auto& pb : p.balls) order.push_back(&pb);
  std::stable_sort(order.begin(), order.end(), [](const PackedBall* a, const PackedBall* b) {
    return a->ball.curvature < b->ball.curvature;
  });
  for (const PackedBall* pb : order) {
    const auto& b = pb->ball;
    const char* col = detail::palette(pb->color);
    if (b.half_space) {
      // Boundary line <z, n> = offset, clipped generously to the viewport.
      const Eigen::VectorXd& nrm = b.curvature_center;
      const Eigen::Vector2d base(nrm[0] * b.offset, nrm[1] * b.offset);
      const Eigen::Vector2d dir(-nrm[1], nrm[0]);
      const double len = 4.0 * std::max(x1 - x0, y1 - y0);
      out += "<line x1=\"" + detail::fmt(sx(base[0] - len * dir[0])) + "\" y1=\"" + detail::fmt(sy(base[1] - len * dir[1])) +
             "\" x2=\"" + detail::fmt(sx(base[0] + len * dir[0])) + "\" y2=\"" + detail::fmt(sy(base[1] + len * dir[1])) +
             "\" stroke=\"" + col + "\" stroke-width=\"1\"/>\n";
      continue;
    }
    const double r = b.radius();
    if (r < spec.min_radius) continue;
    const Eigen::VectorXd c = b.center();
    const bool filled = b.curvature > 0;
    out += "<circle cx=\"" + detail::fmt(sx(c[0])) + "\" cy=\"" + detail::fmt(sy(c[1])) + "\" r=\"" +
           detail::fmt(r * scale) + "\" fill=\"" + (filled ? col : "none") + "\" fill-opacity=\"" +
           (filled ? "0.35" : "0") + "\" stroke=\"" + col + "\" stroke-width=\"0.5\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Tangency graphs

inline json tangency_json(const TangencyGraph& tg, std::optional<bool> oracle_agrees = std::nullopt) {
  json vs = json::array(), es = json::array();
  for (const auto& v : tg.vertices)
    vs.push_back({{"id", v.id}, {"color", v.color}, {"klass", std::string(to_string(v.klass))}, {"word_length", v.word_length}});
  for (const auto& e : tg.edges) es.push_back({{"u", e.u}, {"v", e.v}, {"tag", std::string(to_string(e.tag))}});
  json j = {{"vertices", vs}, {"edges", es}, {"truncation_length", tg.truncation_length}, {"witness_length", tg.witness_length}};
  if (oracle_agrees) j["oracle_agrees"] = *oracle_agrees;
  return j;
}

inline std::string tangency_edge_list(const TangencyGraph& tg) {
  std::string out;
  for (const auto& e : tg.edges) out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + std::string(to_string(e.tag)) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Census

inline std::string census_csv(const std::vector<CensusEntry>& entries) {
  std::string out = "key,rank,family,strict,n_imaginary,n_real,n_surreal,edge_list\n";
  for (const auto& e : entries) {
    out += "\"" + e.key + "\"," + std::to_string(e.graph.rank()) + "," + std::string(to_string(e.family)) + "," +
           (e.strict ? "true" : "false") + "," + std::to_string(e.vertex_classes.imaginary) + "," +
           std::to_string(e.vertex_classes.real) + "," + std::to_string(e.vertex_classes.surreal) + ",\"" +
           format_compact(e.graph) + "\"\n";
  }
  return out;
}

inline json census_json(const std::vector<CensusEntry>& entries) {
  json rows = json::array();
  for (const auto& e : entries)
    rows.push_back({{"key", e.key},
                    {"rank", e.graph.rank()},
                    {"family", std::string(to_string(e.family))},
                    {"strict", e.strict},
                    {"n_imaginary", e.vertex_classes.imaginary},
                    {"n_real", e.vertex_classes.real},
                    {"n_surreal", e.vertex_classes.surreal},
                    {"edge_list", format_compact(e.graph)}});
  return rows;
}

}  // namespace coxpack::io
