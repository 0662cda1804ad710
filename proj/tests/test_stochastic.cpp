#include "pprloc/error.hpp"
#include "pprloc/stochastic.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

using namespace pprloc;

namespace {

RowStochasticMatrix patched(const DirectedGraph& g) {
  return patch_dangling(row_stochastic(g), g.dangling_indicator(), DanglingDistribution::uniform(g.node_count()));
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

}  // namespace

TEST_CASE("damping factor domain") {
  CHECK(Damping().value() == 0.85);
  CHECK_THROWS_AS(Damping(0.0), DomainError);
  CHECK_THROWS_AS(Damping(1.0), DomainError);
  CHECK_THROWS_AS(Damping(-0.2), DomainError);
  CHECK_THROWS_AS(Damping(std::nan("")), DomainError);
}

TEST_CASE("probability vectors are validated") {
  CHECK_NOTHROW(PersonalizationVector(vec({0.25, 0.75})));
  CHECK_THROWS_AS(PersonalizationVector(vec({0.0, 1.0})), DomainError);
  CHECK_THROWS_AS(PersonalizationVector(vec({-0.1, 1.1})), DomainError);
  CHECK_THROWS_AS(PersonalizationVector(vec({0.3, 0.3})), DomainError);
  CHECK_THROWS_AS(DanglingDistribution(Eigen::VectorXd()), DomainError);
  CHECK(DanglingDistribution::uniform(4)[2] == doctest::Approx(0.25));
}

TEST_CASE("row-stochastic matrix of a graph") {
  const auto p1 = row_stochastic(testing::fixture("g1.edges"));
  CHECK_FALSE(p1.dangling_patched());
  CHECK(p1.matrix().row(1).isApprox(vec({0.5, 0.0, 0.5}).transpose()));

  const auto p = row_stochastic(parse_edge_list("1 2"));
  CHECK(p.matrix().row(1).isZero());

  const auto p3 = row_stochastic(testing::fixture("g3.edges"));
  CHECK(p3.matrix().row(3).isApprox(vec({0, 0, 0, 0, 0.5, 0.5}).transpose()));
}

TEST_CASE("patching dangling rows") {
  const auto g = parse_edge_list("1 2");
  const auto u = DanglingDistribution(vec({0.5, 0.5}));
  const auto pu = patch_dangling(row_stochastic(g), g.dangling_indicator(), u);
  CHECK(pu.dangling_patched());
  CHECK(pu.matrix().row(1).isApprox(vec({0.5, 0.5}).transpose()));
  CHECK_THROWS_AS(patch_dangling(pu, g.dangling_indicator(), u), ContractError);

  const auto g1 = testing::fixture("g1.edges");
  const auto p1 = row_stochastic(g1);
  const auto u1 = DanglingDistribution(vec({0.2, 0.3, 0.5}));
  CHECK(patch_dangling(p1, g1.dangling_indicator(), u1).matrix() == p1.matrix());

  const auto single = DirectedGraph({"x"}, {});
  const auto ps = patch_dangling(row_stochastic(single), single.dangling_indicator(), DanglingDistribution::uniform(1));
  CHECK(ps.matrix()(0, 0) == 1.0);
}

TEST_CASE("Google matrix") {
  const auto pu = patched(testing::fixture("two_cycle.edges"));
  const auto gm = google_matrix(Damping(0.85), pu, PersonalizationVector::uniform(2));
  Eigen::MatrixXd expected(2, 2);
  expected << 0.075, 0.925, 0.925, 0.075;
  CHECK((gm.g - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(google_matrix(Damping(0.85), row_stochastic(testing::fixture("two_cycle.edges")),
                                PersonalizationVector::uniform(2)),
                  ContractError);
}

TEST_CASE("default iteration cap") {
  // ceil(log(1e-12) / log(0.85)) = 171
  CHECK(default_max_iterations(Damping(0.85), 1e-12) == 1710);
}

TEST_CASE("PageRank of small fixtures") {
  SUBCASE("two-cycle is symmetric") {
    const auto pu = patched(testing::fixture("two_cycle.edges"));
    const auto v = PersonalizationVector::uniform(2);
    const auto power = pagerank_power(google_matrix(Damping(0.85), pu, v));
    const auto solve = pagerank_solve(Damping(0.85), pu, v);
    CHECK(power.pi.isApprox(vec({0.5, 0.5}), 1e-12));
    CHECK(solve.pi.isApprox(vec({0.5, 0.5}), 1e-12));
  }
  SUBCASE("G1 uniform equals the column means of X1") {
    const auto pu = patched(testing::fixture("g1.edges"));
    const auto v = PersonalizationVector::uniform(3);
    const auto power = pagerank_power(google_matrix(Damping(0.85), pu, v));
    const Eigen::VectorXd means = testing::printed_x1().colwise().mean().transpose();
    CHECK((power.pi - vec({0.3333, 0.4328, 0.2339})).cwiseAbs().maxCoeff() < 1e-4);
    CHECK((power.pi - means).cwiseAbs().maxCoeff() < 1e-4);
  }
  SUBCASE("G3 power and solve agree") {
    const auto pu = patched(testing::fixture("g3.edges"));
    const auto v = PersonalizationVector::uniform(6);
    const auto power = pagerank_power(google_matrix(Damping(0.85), pu, v));
    const auto solve = pagerank_solve(Damping(0.85), pu, v);
    CHECK((power.pi - solve.pi).lpNorm<Eigen::Infinity>() < 1e-10);
  }
  SUBCASE("G1 concentrated on node 1 approaches row 1 of X1") {
    const auto pu = patched(testing::fixture("g1.edges"));
    const double eps = 1e-9;
    const auto v = PersonalizationVector(vec({1 - eps, eps / 2, eps / 2}));
    const auto solve = pagerank_solve(Damping(0.85), pu, v);
    CHECK((solve.pi - vec({0.4035, 0.4186, 0.1779})).cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("power iteration reports non-convergence") {
  const auto pu = patched(testing::fixture("g1.edges"));
  const auto gm = google_matrix(Damping(0.99), pu, PersonalizationVector(vec({0.98, 0.01, 0.01})));
  try {
    pagerank_power(gm, 1e-14, 3);
    FAIL("expected non-convergence");
  } catch (const NumericalError& e) {
    CHECK(e.tag() == "non_convergence");
    CHECK(e.value() > 1e-14);
  }
}

TEST_CASE("matrix-free fixed point matches the dense factorization") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = testing::random_graph(rng, {.min_nodes = 2, .max_nodes = 40});
    const auto pu = patched(g);
    const TransposedSystem dense(Damping(0.85), pu);
    const TransposedSystem iterative(Damping(0.85), pu, SolverOptions{.dense_limit = 0});
    CHECK(dense.dense());
    CHECK_FALSE(iterative.dense());
    const auto v = PersonalizationVector::uniform(g.node_count());
    const auto a = pagerank_solve(dense, v);
    const auto b = pagerank_solve(iterative, v);
    CHECK((a.pi - b.pi).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("property: stochastic invariants on random graphs with dangling nodes") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> alpha_dist(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_graph(rng);
    const auto n = g.node_count();
    const Damping alpha(alpha_dist(rng));
    const auto pu = patched(g);
    for (Eigen::Index i = 0; i < pu.matrix().rows(); ++i)
      CHECK(std::abs(pu.matrix().row(i).sum() - 1.0) <= 1e-12);

    Eigen::VectorXd raw(static_cast<Eigen::Index>(n));
    for (auto& x : raw) x = 0.05 + alpha_dist(rng);
    const PersonalizationVector v(raw / raw.sum());
    const auto gm = google_matrix(alpha, pu, v);
    CHECK(gm.g.minCoeff() >= (1 - alpha.value()) * v.values().minCoeff() - 1e-15);
    for (Eigen::Index i = 0; i < gm.g.rows(); ++i) CHECK(std::abs(gm.g.row(i).sum() - 1.0) <= 1e-12);

    const auto power = pagerank_power(gm);
    const auto solve = pagerank_solve(alpha, pu, v);
    CHECK((power.pi - solve.pi).lpNorm<Eigen::Infinity>() <= 1e-9);
    CHECK(solve.pi.minCoeff() > 0.0);
    CHECK(std::abs(solve.pi.sum() - 1.0) <= 1e-10);
    const Eigen::RowVectorXd lhs =
        solve.pi.transpose() * (Eigen::MatrixXd::Identity(gm.g.rows(), gm.g.cols()) - alpha.value() * pu.matrix());
    CHECK((lhs - (1 - alpha.value()) * v.values().transpose()).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}
