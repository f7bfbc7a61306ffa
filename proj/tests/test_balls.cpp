#include <numbers>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "coxpack/balls.hpp"
#include "support/sample_graphs.hpp"

using namespace coxpack;
using Catch::Approx;

namespace {

Eigen::VectorXd random_unit(int d, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd u(d);
  for (int i = 0; i < d; ++i) u[i] = nd(rng);
  return u.normalized();
}

/// Inverse stereographic image of a sphere point from the pole e_{d-1}.
Eigen::VectorXd project(const Eigen::VectorXd& p) {
  const int d = static_cast<int>(p.size());
  return p.head(d - 1) / (1.0 - p[d - 1]);
}

bool contains(const EuclideanBall& ball, const Eigen::VectorXd& z) {
  if (ball.half_space) return z.dot(ball.curvature_center) >= ball.offset;
  const double dist = (z - ball.center()).norm();
  return ball.curvature > 0 ? dist <= ball.radius() : dist >= ball.radius();
}

}  // namespace

TEST_CASE("Lorentz frame", "[balls][frame]") {
  for (const auto& g : {samples::k4_all4(), samples::universal_rank4(), samples::star3_inf(), samples::cycle5_all4(),
                        samples::butterfly_all3()}) {
    const auto b = gram_matrix(g);
    const auto f = lorentz_frame(b);
    CHECK(frame_residual(f, b) <= 1e-9);
    CHECK(height(f.basis_change.col(f.size() - 1)) > 0);
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(b.size(), 0.3, 1.7);
    CHECK((f.from_frame(f.to_frame(x)) - x).norm() < 1e-12);
  }
  CHECK_THROWS_AS(lorentz_frame(gram_matrix(parse_compact("n=3; 0-1:3 1-2:3"))), PreconditionError);
}

TEST_CASE("caps contain exactly the rays on the non-positive side", "[balls][cap]") {
  std::mt19937 rng(5);
  const auto b = gram_matrix(samples::k4_all4());
  const auto f = lorentz_frame(b);
  const auto fw = fundamental_weights(b);
  for (int s = 0; s < 4; ++s) {
    const auto cap = cap_of(fw.weight(s), f, b);
    CHECK(cap.center.norm() == Approx(1.0));
    for (int i = 0; i < 500; ++i) {
      const Eigen::VectorXd u = random_unit(3, rng);
      Eigen::VectorXd ray(4);
      ray << u, 1.0;
      const double side = b.form(fw.weight(s), f.from_frame(ray));
      const double margin = cap.angular_radius - angular_distance(u, cap.center);
      if (std::abs(margin) > 1e-9) CHECK((side <= 0) == (margin > 0));
    }
  }
}

TEST_CASE("fundamental caps of the universal system are pairwise tangent", "[balls][cap]") {
  const auto b = gram_matrix(samples::universal_rank4());
  const auto f = lorentz_frame(b);
  const auto fw = fundamental_weights(b);
  std::vector<SphericalCap> caps;
  for (int s = 0; s < 4; ++s) caps.push_back(cap_of(fw.weight(s), f, b));
  for (int s = 0; s < 4; ++s)
    for (int t = s + 1; t < 4; ++t) {
      CHECK(separation(fw.weight(s), fw.weight(t), b) == Approx(1.0));
      CHECK(classify_pair(fw.weight(s), fw.weight(t), b).kind == PairRelation::Kind::Tangent);
      CHECK(angular_distance(caps[s].center, caps[t].center) ==
            Approx(caps[s].angular_radius + caps[t].angular_radius));
    }
}

TEST_CASE("stereographic projection preserves membership", "[balls][stereo]") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> angle(0.05, std::numbers::pi - 0.05);
  for (int i = 0; i < 60; ++i) {
    const SphericalCap cap{random_unit(3, rng), angle(rng)};
    const auto ball = stereographic(cap, 2);
    for (int k = 0; k < 200; ++k) {
      const Eigen::VectorXd p = random_unit(3, rng);
      const double margin = cap.angular_radius - angular_distance(p, cap.center);
      if (std::abs(margin) < 1e-6 || p[2] > 1 - 1e-6) continue;
      CHECK(contains(ball, project(p)) == (margin > 0));
    }
  }
}

TEST_CASE("caps through the pole become half-spaces", "[balls][stereo]") {
  // Hemisphere centred on the equator: its boundary passes through the pole.
  const SphericalCap cap{Eigen::Vector3d(1, 0, 0), std::numbers::pi / 2};
  const auto ball = stereographic(cap, 2);
  REQUIRE(ball.half_space);
  CHECK(ball.curvature == 0.0);
  CHECK(ball.offset == Approx(0.0).margin(1e-12));
  CHECK(contains(ball, Eigen::Vector2d(1, 5)));
  CHECK_FALSE(contains(ball, Eigen::Vector2d(-1, 5)));

  const auto projected = stereographic_all({cap, SphericalCap{Eigen::Vector3d(0, 0, -1), 0.3}});
  CHECK(projected.rotation_attempt == 1);
  CHECK_FALSE(projected.balls[0].half_space);
  CHECK_THROWS_AS(stereographic(cap, 3), PreconditionError);
}

TEST_CASE("pair relation thresholds", "[balls]") {
  CHECK(relation_of(1.5) == PairRelation::Kind::Disjoint);
  CHECK(relation_of(1.0 + 1e-10) == PairRelation::Kind::Tangent);
  CHECK(relation_of(1.0 - 1e-10) == PairRelation::Kind::Tangent);
  CHECK(relation_of(0.5) == PairRelation::Kind::Transversal);
  CHECK(relation_of(0.0) == PairRelation::Kind::Transversal);
  CHECK(relation_of(-0.2) == PairRelation::Kind::DeepIntersect);
}

TEST_CASE("cluster validation", "[balls][cluster]") {
  SECTION("level 2 weights pack") {
    const auto b = gram_matrix(samples::k4_all4());
    const auto report = validate_cluster(space_like(weights_up_to_length(b, 4)), b, 2);
    CHECK(report.is_packing);
    CHECK(report.violating_count == 0);
    CHECK(report.min_separation >= 1 - 1e-9);
  }
  SECTION("level 3 weights overlap") {
    const auto b = gram_matrix(samples::k4_all4_dotted());
    const auto ws = space_like(weights_up_to_length(b, 3));
    const auto report = validate_cluster(ws, b, 1, 5);
    CHECK_FALSE(report.is_packing);
    CHECK(report.min_separation < 1);
    CHECK(report.violating_pairs.size() == std::min<std::size_t>(5, report.violating_count));
    const auto parallel = validate_cluster(ws, b, 3, 5);
    CHECK(parallel.violating_count == report.violating_count);
    CHECK(parallel.min_separation == report.min_separation);
  }
  SECTION("time-like input is rejected") {
    const auto b = gram_matrix(samples::star3_inf());
    CHECK_THROWS_AS(validate_cluster(weights_up_to_length(b, 1), b), PreconditionError);
  }
}

TEST_CASE("residual margin", "[balls]") {
  const auto b = gram_matrix(samples::universal_rank4());
  const auto ws = space_like(weights_up_to_length(b, 2));
  // The time-like barycentre direction lies outside every ball.
  CHECK(residual_margin(projectivize(Eigen::Vector4d(-1, -1, -1, -1)), ws, b) > 0);
  CHECK(residual_margin(projectivize(Eigen::Vector4d(1, 0, 0, 0)), {}, b) == std::numeric_limits<double>::infinity());
}
