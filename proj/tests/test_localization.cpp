#include "pprloc/error.hpp"
#include "pprloc/localization.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

using namespace pprloc;

namespace {

PageRankContext context(const std::string& name, double alpha = 0.85) {
  return PageRankContext(testing::fixture(name), Damping(alpha));
}

// Uniform draws normalised; test-side sampler independent of the oracle module.
PersonalizationVector random_v(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(1e-3, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = std::pow(u(rng), 4);
  return PersonalizationVector(v / v.sum());
}

}  // namespace

TEST_CASE("fundamental matrices of the example networks") {
  SUBCASE("G1") {
    const auto ctx = context("g1.edges");
    CHECK((ctx.x().x - testing::printed_x1()).cwiseAbs().maxCoeff() < 1e-4);
  }
  SUBCASE("G2 diagonal entries") {
    const auto x = context("g2.edges").x();
    CHECK(std::abs(x(0, 0) - 0.3514) < 1e-4);
    CHECK(std::abs(x(3, 3) - 0.3090) < 1e-4);
    CHECK(std::abs(x(4, 4) - 0.3090) < 1e-4);
    CHECK((x.x - testing::printed_x2()).cwiseAbs().maxCoeff() < 1e-4);
  }
  SUBCASE("two-cycle closed form") {
    const double a = 0.85;
    const double diag = (1 - a) / (1 - a * a);
    const auto x = context("two_cycle.edges").x();
    CHECK(std::abs(x(0, 0) - diag) < 1e-14);
    CHECK(std::abs(x(0, 1) - a * diag) < 1e-14);
    CHECK(std::abs(x(1, 0) - a * diag) < 1e-14);
    CHECK(std::abs(x(0, 0) - 0.5405) < 1e-4);
    CHECK(std::abs(x(0, 1) - 0.4595) < 1e-4);
  }
}

TEST_CASE("structure verification") {
  SUBCASE("X1 margins") {
    const auto report = verify_structure(context("g1.edges").x());
    CHECK(report.ok);
    CHECK(std::abs(report.margins[0] - 0.1053) < 1e-4);
  }
  SUBCASE("X3 passes with exact zeros") {
    const auto ctx = context("g3.edges");
    const auto report = verify_structure(ctx.x());
    CHECK(report.ok);
    CHECK(std::abs(ctx.x()(3, 0)) <= 1e-12);
    CHECK(report.min_entry >= -1e-12);
  }
  SUBCASE("random row-stochastic matrices") {
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 20; ++trial) {
      const auto q = RowStochasticMatrix::from_stochastic(testing::random_stochastic(rng, 20));
      const auto report = verify_structure(fundamental_matrix(Damping(0.85), q));
      CHECK(report.ok);
      for (double m : report.margins) CHECK(m > 0.0);
    }
  }
  SUBCASE("a broken matrix is reported, not thrown") {
    FundamentalMatrix bad{testing::printed_x1(), Damping(0.85)};
    bad.x(1, 0) = 0.5;   // beats the diagonal of column 0
    bad.x(2, 2) = -0.1;  // negative and row 2 no longer sums to 1
    const auto report = verify_structure(bad);
    CHECK_FALSE(report.ok);
    CHECK(report.failures.size() >= 3);
    CHECK_THROWS_AS(require_structure(bad), NumericalError);
  }
}

TEST_CASE("attainable intervals") {
  const auto g1 = context("g1.edges");
  const auto i2 = pr_interval(g1.x(), 1);
  CHECK(std::abs(i2.lo - 0.3872) < 1e-4);
  CHECK(std::abs(i2.hi - 0.4925) < 1e-4);
  CHECK(i2.lo_witness == 2);

  const auto g3 = context("g3.edges");
  const auto i1 = pr_interval(g3.x(), 0);
  CHECK(std::abs(i1.lo) <= 1e-12);
  CHECK(std::abs(i1.hi - 0.2348) < 1e-4);
  // Rows 4, 5 and 6 all reach the minimum; the smallest index wins.
  CHECK(i1.lo_witness == 3);

  const auto i5 = pr_interval(context("g2.edges").x(), 4);
  CHECK(std::abs(i5.lo - 0.1744) < 1e-4);
  CHECK(std::abs(i5.hi - 0.3090) < 1e-4);

  CHECK_THROWS_AS(pr_interval(g1.x(), 3), DomainError);

  const PageRankContext single(DirectedGraph({"only"}, {}), Damping(0.85));
  CHECK(single.x()(0, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(pr_interval(single.x(), 0), DegenerateIntervalError);
}

TEST_CASE("basis family") {
  const auto b = basis_family(1, 0.1, 3);
  CHECK(b.v[0] == doctest::Approx(0.05));
  CHECK(b.v[1] == doctest::Approx(0.9));
  CHECK(b.v[2] == doctest::Approx(0.05));
  const auto half = basis_family(0, 0.5, 2);
  CHECK(half.v[0] == 0.5);
  CHECK(half.v[1] == 0.5);
  CHECK_THROWS_AS(basis_family(0, 0.5, 1), DomainError);
  CHECK_THROWS_AS(basis_family(0, 0.0, 3), DomainError);
  CHECK_THROWS_AS(basis_family(0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(basis_family(3, 0.5, 3), DomainError);

  const auto g1 = context("g1.edges");
  CHECK(std::abs(g1.pagerank(basis_family(0, 1e-3, 3).v)[0] - 0.4035) < 1e-3);
}

TEST_CASE("row-limit property: error is linear in epsilon") {
  for (const char* name : {"g1.edges", "g2.edges", "g3.edges", "dangling.edges"}) {
    const auto ctx = context(name);
    const auto n = ctx.size();
    for (NodeIndex j = 0; j < n; ++j) {
      const Eigen::VectorXd row = ctx.x().x.row(static_cast<Eigen::Index>(j)).transpose();
      double previous = std::numeric_limits<double>::infinity();
      double ratio = 0.0;
      for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double err = (ctx.pagerank(basis_family(j, eps, n).v) - row).lpNorm<Eigen::Infinity>();
        CHECK(err < previous);
        if (ratio > 0.0) CHECK(err / eps == doctest::Approx(ratio).epsilon(1e-6));
        ratio = err / eps;
        previous = err;
      }
      CHECK(ratio <= 1.0);
    }
  }
}

TEST_CASE("property: sampled PageRank stays inside every interval") {
  std::mt19937_64 rng(77);
  std::vector<PageRankContext> contexts;
  for (const char* name : {"g1.edges", "g2.edges", "g3.edges", "dangling.edges"}) contexts.push_back(context(name));
  for (int k = 0; k < 5; ++k) contexts.emplace_back(testing::random_graph(rng, {.max_nodes = 15}), Damping(0.85));
  for (const auto& ctx : contexts) {
    const auto intervals = pr_intervals(ctx.x());
    double sum_lo = 0.0;
    double sum_hi = 0.0;
    for (const auto& in : intervals) {
      CHECK(in.lo >= -1e-12);
      CHECK(in.lo < in.hi);
      CHECK(in.hi <= 1.0);
      sum_lo += in.lo;
      sum_hi += in.hi;
    }
    CHECK(sum_hi >= 1.0);
    CHECK(sum_lo <= 1.0);
    for (int s = 0; s < 1000; ++s) {
      const auto pi = ctx.pagerank(random_v(rng, ctx.size()));
      for (const auto& in : intervals) CHECK(in.contains(pi[static_cast<Eigen::Index>(in.node)]));
    }
  }
}

TEST_CASE("PageRank is affine along the mixing parameter") {
  const auto ctx = context("g2.edges");
  const auto top = basis_family(0, 1e-3, 5).v.values();
  const auto bottom = basis_family(2, 1e-3, 5).v.values();
  auto f = [&](double lambda) {
    return ctx.pagerank(PersonalizationVector(lambda * top + (1 - lambda) * bottom))[0];
  };
  const double f0 = f(0.0), f3 = f(0.3), f1 = f(1.0);
  CHECK(std::abs(f3 - (0.3 * f1 + 0.7 * f0)) < 1e-14);
  CHECK(f1 > f0);
}

TEST_CASE("achieving a target value") {
  const auto g1 = context("g1.edges");
  const auto a = achieve_value(g1, 0, 0.35, 1e-6);
  CHECK(std::abs(a.achieved - 0.35) <= 1e-6);
  CHECK(a.epsilon <= 1e-7);
  CHECK(a.lambda > 0.0);
  CHECK(a.lambda < 1.0);
  const PersonalizationVector v(a.v);
  CHECK(std::abs(g1.pagerank(v)[0] - 0.35) <= 1e-6);

  CHECK_THROWS_AS(achieve_value(g1, 0, 0.45, 1e-6), DomainError);
  const auto in = pr_interval(g1.x(), 0);
  CHECK_THROWS_AS(achieve_value(g1, 0, in.lo, 1e-6), DomainError);
  CHECK_THROWS_AS(achieve_value(g1, 0, in.hi, 1e-6), DomainError);
  CHECK_THROWS_AS(achieve_value(g1, 0, 0.35, 0.0), DomainError);

  SUBCASE("targets next to an endpoint shrink epsilon") {
    const auto near = achieve_value(g1, 0, in.hi - 1e-8, 1e-10);
    CHECK(std::abs(near.achieved - (in.hi - 1e-8)) <= 1e-10);
    CHECK(near.epsilon < 1e-8);
  }
  SUBCASE("a target one ulp below the supremum") {
    const double target = std::nextafter(in.hi, 0.0);
    try {
      const auto r = achieve_value(g1, 0, target, 1e-18);
      CHECK(std::abs(r.achieved - target) <= 1e-18);
    } catch (const NumericalError& e) {
      CHECK(e.tag() == "unreachable");
      CHECK(std::abs(e.value() - in.hi) < 1e-12);
    }
  }
}

TEST_CASE("property: interval midpoints are achievable on random graphs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const PageRankContext ctx(testing::random_graph(rng, {.max_nodes = 20}), Damping(0.85));
    for (const auto& in : pr_intervals(ctx.x())) {
      const double mid = 0.5 * (in.lo + in.hi);
      const auto a = achieve_value(ctx, in.node, mid, 1e-6);
      CHECK(std::abs(a.achieved - mid) <= 1e-6);
    }
  }
}

TEST_CASE("fundamental matrix agrees with an independent series expansion") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing::random_graph(rng, {.max_nodes = 10});
    const PageRankContext ctx(g, Damping(0.85));
    const auto reference = testing::neumann_x(0.85, ctx.patched().matrix());
    CHECK((ctx.x().x - reference).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("dangling nodes and explicit distributions") {
  const auto g = testing::fixture("isolated.json");
  Eigen::VectorXd u(4);
  u << 0.1, 0.2, 0.3, 0.4;
  const PageRankContext ctx(g, Damping(0.85), DanglingDistribution(u));
  CHECK(ctx.patched().matrix().row(3).isApprox(u.transpose()));
  CHECK(ctx.structure().ok);
  CHECK_THROWS_AS(PageRankContext(g, Damping(0.85), DanglingDistribution::uniform(3)), DomainError);
}
