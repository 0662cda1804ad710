#pragma once

#include "pprloc/stochastic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pprloc {

/// X = (1 - alpha)(I - alpha P_u)^{-1}. Row j is the limit of the PageRank
/// vector as the personalization concentrates on node j, and pi^T = v^T X
/// for every personalization v.
struct FundamentalMatrix {
  Eigen::MatrixXd x;
  Damping alpha;

  std::size_t size() const noexcept { return static_cast<std::size_t>(x.rows()); }
  double operator()(NodeIndex row, NodeIndex col) const {
    return x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
};

/// Row j comes from solving the transposed system against (1 - alpha) e_j.
/// Throws NumericalError("solver_residual") naming the first row whose
/// residual exceeds kSolveResidualLimit.
FundamentalMatrix fundamental_matrix(const TransposedSystem& system);
FundamentalMatrix fundamental_matrix(Damping alpha, const RowStochasticMatrix& p_u);

inline constexpr double kRowSumTolerance = 1e-10;
/// Entries down to -kNonnegativeSlack count as zero.
inline constexpr double kNonnegativeSlack = 1e-12;

struct StructureReport {
  bool ok = true;
  double min_entry = 0.0;
  double max_row_sum_error = 0.0;
  /// x_ii - max_{k != i} x_ki per column; +inf when n = 1.
  std::vector<double> margins;
  std::vector<std::string> failures;
};

/// Checks nonnegativity, unit row sums and strict column dominance of the
/// diagonal. Never throws; see require_structure.
StructureReport verify_structure(const FundamentalMatrix& x);

/// verify_structure, throwing NumericalError("structure") on any failure.
StructureReport require_structure(const FundamentalMatrix& x);

/// Open interval (lo, hi) of attainable PageRank values of one node.
struct PRInterval {
  NodeIndex node = 0;
  double lo = 0.0;
  double hi = 0.0;
  /// Row attaining the column minimum; smallest index on ties.
  NodeIndex lo_witness = 0;

  bool contains(double value) const noexcept { return lo < value && value < hi; }
};

/// lo = min_j x_ji, hi = x_ii. Throws DegenerateIntervalError when n = 1.
PRInterval pr_interval(const FundamentalMatrix& x, NodeIndex i);
std::vector<PRInterval> pr_intervals(const FundamentalMatrix& x);

/// Personalization with 1 - epsilon on node j and epsilon / (n - 1) on every
/// other node.
struct BasisFamilyVector {
  NodeIndex j = 0;
  double epsilon = 0.0;
  PersonalizationVector v;
};

/// Throws DomainError for n < 2, j >= n or epsilon outside (0, 1).
BasisFamilyVector basis_family(NodeIndex j, double epsilon, std::size_t n);

/// Everything derived from (graph, alpha, u): the patched matrix, the factored
/// linear system and the verified fundamental matrix. Immutable and safe to
/// share across threads once constructed.
class PageRankContext {
public:
  /// u defaults to uniform. Throws NumericalError("structure") if X fails
  /// verification.
  PageRankContext(DirectedGraph graph, Damping alpha,
                  std::optional<DanglingDistribution> u = std::nullopt, SolverOptions options = {});

  /// Context over an arbitrary row-stochastic matrix; node labels are 1..n.
  PageRankContext(const RowStochasticMatrix& q, Damping alpha, SolverOptions options = {});

  const DirectedGraph& graph() const noexcept { return graph_; }
  Damping alpha() const noexcept { return alpha_; }
  const DanglingDistribution& dangling_distribution() const noexcept { return u_; }
  const RowStochasticMatrix& patched() const noexcept { return p_u_; }
  const TransposedSystem& system() const noexcept { return system_; }
  const FundamentalMatrix& x() const noexcept { return x_; }
  const StructureReport& structure() const noexcept { return structure_; }
  std::size_t size() const noexcept { return graph_.node_count(); }

  /// PageRank for personalization v through the factored system.
  Eigen::VectorXd pagerank(const PersonalizationVector& v) const;

private:
  DirectedGraph graph_;
  Damping alpha_;
  DanglingDistribution u_;
  RowStochasticMatrix p_u_;
  TransposedSystem system_;
  FundamentalMatrix x_;
  StructureReport structure_;
};

struct Achievement {
  double lambda = 0.0;
  double epsilon = 0.0;
  double achieved = 0.0;
  /// lambda * v_{i,eps} + (1 - lambda) * v_{lo_witness,eps}
  Eigen::VectorXd v;
};

/// Finds a personalization mixing the basis-family vectors of node i and of
/// its interval's lo_witness so that node i's PageRank is within tol of
/// target. epsilon starts at min(1e-6, tol / 10) and shrinks tenfold while
/// the target lies outside the range reachable at that epsilon; lambda is
/// then bisected.
///
/// Throws DomainError if the target is not strictly inside the interval and
/// NumericalError("unreachable") if the epsilon floor is hit first; the
/// error value is the closest achieved PageRank.
Achievement achieve_value(const PageRankContext& ctx, NodeIndex i, double target, double tol);

inline constexpr double kAchieveEpsilonFloor = 1e-15;

}  // namespace pprloc
