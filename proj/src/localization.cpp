#include "pprloc/localization.hpp"

#include "pprloc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pprloc {

FundamentalMatrix fundamental_matrix(const TransposedSystem& system) {
  const auto n = static_cast<Eigen::Index>(system.size());
  const double scale = 1.0 - system.alpha().value();
  const Eigen::MatrixXd rhs = scale * Eigen::MatrixXd::Identity(n, n);
  // Column j of the solution is row j of X.
  const Eigen::MatrixXd rows = system.solve(rhs);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double r = system.residual(rows.col(j), rhs.col(j));
    if (!(r <= kSolveResidualLimit)) {
      std::ostringstream msg;
      msg << "row " << j << " of the fundamental matrix has solver residual " << r;
      throw NumericalError("solver_residual", msg.str(), r);
    }
  }
  return FundamentalMatrix{rows.transpose(), system.alpha()};
}

FundamentalMatrix fundamental_matrix(Damping alpha, const RowStochasticMatrix& p_u) {
  return fundamental_matrix(TransposedSystem(alpha, p_u));
}

StructureReport verify_structure(const FundamentalMatrix& fm) {
  const auto& x = fm.x;
  const auto n = x.rows();
  StructureReport report;
  report.min_entry = x.minCoeff();
  if (report.min_entry < -kNonnegativeSlack) {
    std::ostringstream msg;
    msg << "negative entry " << report.min_entry;
    report.failures.push_back(msg.str());
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double err = std::abs(x.row(i).sum() - 1.0);
    report.max_row_sum_error = std::max(report.max_row_sum_error, err);
    if (err > kRowSumTolerance)
      report.failures.push_back("row " + std::to_string(i) + " does not sum to 1");
  }
  report.margins.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double off = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != i) off = std::max(off, x(k, i));
    const double margin = x(i, i) - off;
    report.margins[static_cast<std::size_t>(i)] = margin;
    if (!(margin > 0.0))
      report.failures.push_back("column " + std::to_string(i) + " is not strictly dominated by its diagonal");
  }
  report.ok = report.failures.empty();
  return report;
}

StructureReport require_structure(const FundamentalMatrix& x) {
  auto report = verify_structure(x);
  if (!report.ok) {
    std::string msg = "fundamental matrix failed structure checks:";
    for (const auto& f : report.failures) msg += " " + f + ";";
    throw NumericalError("structure", msg);
  }
  return report;
}

PRInterval pr_interval(const FundamentalMatrix& x, NodeIndex i) {
  const auto n = x.size();
  if (i >= n) throw DomainError("node index out of range");
  if (n == 1) throw DegenerateIntervalError();
  PRInterval out;
  out.node = i;
  out.hi = x(i, i);
  out.lo = x(0, i);
  out.lo_witness = 0;
  for (NodeIndex j = 1; j < n; ++j) {
    if (x(j, i) < out.lo) {
      out.lo = x(j, i);
      out.lo_witness = j;
    }
  }
  return out;
}

std::vector<PRInterval> pr_intervals(const FundamentalMatrix& x) {
  std::vector<PRInterval> out;
  out.reserve(x.size());
  for (NodeIndex i = 0; i < x.size(); ++i) out.push_back(pr_interval(x, i));
  return out;
}

BasisFamilyVector basis_family(NodeIndex j, double epsilon, std::size_t n) {
  if (n < 2) throw DomainError("basis family needs at least two nodes");
  if (j >= n) throw DomainError("node index out of range");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  Eigen::VectorXd v = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                                epsilon / static_cast<double>(n - 1));
  v[static_cast<Eigen::Index>(j)] = 1.0 - epsilon;
  return BasisFamilyVector{j, epsilon, PersonalizationVector(std::move(v))};
}

namespace {

DirectedGraph graph_of(const RowStochasticMatrix& q) {
  const auto n = q.size();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (q.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0.0)
        edges.emplace_back(labels[i], labels[j]);
  return DirectedGraph(std::move(labels), edges);
}

RowStochasticMatrix patched_from(const DirectedGraph& g, const DanglingDistribution& u) {
  return patch_dangling(row_stochastic(g), g.dangling_indicator(), u);
}

}  // namespace

PageRankContext::PageRankContext(DirectedGraph graph, Damping alpha,
                                 std::optional<DanglingDistribution> u, SolverOptions options)
    : graph_(std::move(graph)),
      alpha_(alpha),
      u_(u ? std::move(*u) : DanglingDistribution::uniform(graph_.node_count())),
      p_u_(u_.size() == graph_.node_count()
               ? patched_from(graph_, u_)
               : throw DomainError("dangling distribution has " + std::to_string(u_.size()) +
                                   " entries, graph has " + std::to_string(graph_.node_count()) +
                                   " nodes")),
      system_(alpha_, p_u_, options),
      x_(fundamental_matrix(system_)),
      structure_(require_structure(x_)) {}

PageRankContext::PageRankContext(const RowStochasticMatrix& q, Damping alpha, SolverOptions options)
    : graph_(graph_of(q)),
      alpha_(alpha),
      u_(DanglingDistribution::uniform(q.size())),
      p_u_(q.dangling_patched() ? q : throw ContractError("context needs a row-stochastic matrix")),
      system_(alpha_, p_u_, options),
      x_(fundamental_matrix(system_)),
      structure_(require_structure(x_)) {}

Eigen::VectorXd PageRankContext::pagerank(const PersonalizationVector& v) const {
  return pagerank_solve(system_, v).pi;
}

Achievement achieve_value(const PageRankContext& ctx, NodeIndex i, double target, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const auto interval = pr_interval(ctx.x(), i);
  if (!interval.contains(target)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "target " << target << " is outside the open interval (" << interval.lo << ", "
        << interval.hi << ")";
    throw DomainError(msg.str());
  }
  const auto n = ctx.size();
  const auto idx = static_cast<Eigen::Index>(i);
  double closest = std::numeric_limits<double>::quiet_NaN();

  const double start = std::max(std::min(1e-6, tol / 10.0), kAchieveEpsilonFloor);
  for (double eps = start; eps >= 0.999 * kAchieveEpsilonFloor; eps /= 10.0) {
    const auto top = basis_family(i, eps, n);
    const auto bottom = basis_family(interval.lo_witness, eps, n);
    auto mix = [&](double lambda) {
      Eigen::VectorXd v = lambda * top.v.values() + (1.0 - lambda) * bottom.v.values();
      return PersonalizationVector(std::move(v));
    };
    auto value_at = [&](double lambda) { return ctx.pagerank(mix(lambda))[idx]; };

    const double f_hi = value_at(1.0);
    const double f_lo = value_at(0.0);
    closest = std::abs(f_hi - target) < std::abs(f_lo - target) ? f_hi : f_lo;
    if (target > f_hi + tol || target < f_lo - tol) continue;

    // The PageRank of node i is affine in lambda, increasing from f_lo to f_hi.
    double a = 0.0;
    double b = 1.0;
    double lambda = target >= f_hi ? 1.0 : (target <= f_lo ? 0.0 : 0.5);
    double value = value_at(lambda);
    for (int it = 0; it < 200 && std::abs(value - target) > tol; ++it) {
      if (value < target) a = lambda; else b = lambda;
      lambda = 0.5 * (a + b);
      value = value_at(lambda);
    }
    if (std::abs(value - target) <= tol) return Achievement{lambda, eps, value, mix(lambda).values()};
    closest = value;
  }
  std::ostringstream msg;
  msg.precision(12);
  msg << "target " << target << " not reachable within " << tol << " before epsilon floor "
      << kAchieveEpsilonFloor << "; closest value " << closest;
  throw NumericalError("unreachable", msg.str(), closest);
}

}  // namespace pprloc
