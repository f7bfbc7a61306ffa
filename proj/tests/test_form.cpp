#include <numbers>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "coxpack/form.hpp"
#include "support/oracles.hpp"
#include "support/sample_graphs.hpp"

using namespace coxpack;
using Catch::Approx;

TEST_CASE("gram entries follow the labels", "[form]") {
  const auto b = gram_matrix(parse_compact("n=4; 0-1:3 1-2:5 2-3:inf(1.5)"));
  CHECK(b(0, 0) == 1.0);
  CHECK(b(0, 1) == Approx(-std::cos(std::numbers::pi / 3)));
  CHECK(b(2, 1) == Approx(-std::cos(std::numbers::pi / 5)));
  CHECK(b(2, 3) == -1.5);
  CHECK(b(0, 2) == 0.0);
  CHECK(b.form(Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector4d(0, 1, 0, 0)) == Approx(-0.5));
}

TEST_CASE("gram matrix rejects malformed input", "[form]") {
  CHECK_THROWS_AS(GramMatrix(Eigen::MatrixXd(2, 3)), PreconditionError);
  Eigen::Matrix2d m;
  m << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(GramMatrix(m), PreconditionError);
}

TEST_CASE("signature and type", "[form]") {
  const auto a3 = parse_compact("n=3; 0-1:3 1-2:3");
  const auto affine_a2 = parse_compact("n=3; 0-1:3 1-2:3 0-2:3");
  CHECK(classify_type(a3) == TypeClass::Finite);
  CHECK(classify_type(affine_a2) == TypeClass::Affine);
  CHECK(classify_type(parse_compact("n=2; 0-1:inf")) == TypeClass::Affine);
  CHECK(classify_type(samples::k4_all4()) == TypeClass::Lorentzian);
  CHECK(classify_type(samples::universal_rank4()) == TypeClass::Lorentzian);

  const auto s = signature(gram_matrix(samples::universal_rank4()));
  CHECK(s.n_plus == 3);
  CHECK(s.n_minus == 1);
  CHECK(s.n_zero == 0);
  CHECK(s.min_eigenvalue == Approx(-2.0));

  // Two disjoint hyperbolic triangles: two negative directions.
  CHECK(classify_type(parse_compact("n=6; 0-1:inf 1-2:inf 0-2:inf 3-4:inf 4-5:inf 3-5:inf")) ==
        TypeClass::OtherIndefinite);
  CHECK_THROWS_AS(signature(gram_matrix(a3), 0.0), PreconditionError);
}

TEST_CASE("level of named systems", "[form][level]") {
  CHECK(level(parse_compact("n=3; 0-1:3 1-2:3")) == 0);
  CHECK(level(parse_compact("n=3; 0-1:3 1-2:3 0-2:3")) == 0);
  CHECK(level(parse_compact("n=3; 0-1:inf 1-2:inf 0-2:inf")) == 1);
  CHECK(level(samples::k4_all4()) == 2);
  CHECK(level(samples::universal_rank4()) == 2);
  CHECK(level(samples::star3_inf()) == 2);
  CHECK(level(samples::cycle5_all4()) == 2);
  CHECK(level(samples::k4_all4_dotted()) == 3);
  CHECK(is_level_at_most(samples::k4_all4(), 2));
  CHECK_FALSE(is_level_at_most(samples::k4_all4(), 1));
  CHECK_THROWS_AS(is_level_at_most(samples::k4_all4(), 4), PreconditionError);
}

TEST_CASE("level agrees with the all-subsets oracle", "[form][level]") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 6);
  const EdgeLabel labels[] = {EdgeLabel::finite(3), EdgeLabel::finite(4), EdgeLabel::finite(5),
                              EdgeLabel::finite(6), EdgeLabel::infinite()};
  for (int i = 0; i < 200; ++i) {
    const int n = 3 + i % 5;
    CoxeterGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (int k = pick(rng); k < 5) g.set_edge(u, v, labels[k]);
    CHECK(level(g) == oracle::brute_force_level(g, kDefaultZeroTol));
  }
}

TEST_CASE("fundamental weights", "[form][weights]") {
  const auto b = gram_matrix(samples::universal_rank4());
  const auto fw = fundamental_weights(b);
  CHECK((fw.vectors - oracle::universal_inverse(4)).cwiseAbs().maxCoeff() < 1e-12);
  for (int s = 0; s < 4; ++s) {
    CHECK(fw.norms[s] == Approx(oracle::kUniversal4WeightNorm));
    for (int t = 0; t < 4; ++t) {
      CHECK(b.form(Eigen::VectorXd::Unit(4, t), fw.weight(s)) == Approx(s == t ? 1.0 : 0.0).margin(1e-12));
      if (s != t) CHECK(b.form(fw.weight(s), fw.weight(t)) == Approx(oracle::kUniversal4WeightProduct));
    }
  }
  for (int n : {5, 6, 7}) {
    const auto g = fundamental_weights(gram_matrix(CoxeterGraph([n] {
      CoxeterGraph k(n);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) k.set_edge(u, v, EdgeLabel::infinite());
      return k;
    }())));
    CHECK((g.vectors - oracle::universal_inverse(n)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(fundamental_weights(gram_matrix(parse_compact("n=3; 0-1:3 1-2:3 0-2:3"))), SingularFormError);
}
