#pragma once

#include "pprloc/localization.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace pprloc {

/// Resolution for strict comparisons between entries of X. Differences at or
/// below it are ties.
inline constexpr double kStrictMargin = 1e-9;

/// Differences between two PageRank components at or below this count as a
/// tie when checking rank orderings of concrete PageRank vectors.
inline constexpr double kRankResolution = 1e-13;

struct CompetitionVerdict {
  NodeIndex i = 0;
  NodeIndex j = 0;
  bool competes = false;
  /// First row k with x_ki - x_kj > kStrictMargin.
  std::optional<NodeIndex> witness_k;
  /// First row l with x_lj - x_li > kStrictMargin.
  std::optional<NodeIndex> witness_l;
};

/// Nodes i and j are effective competitors iff the difference of columns i
/// and j of X takes both signs. Throws DomainError for i == j.
CompetitionVerdict effective_competitors(const FundamentalMatrix& x, NodeIndex i, NodeIndex j);

/// All competing pairs {i, j} with i < j, in lexicographic order.
std::vector<std::pair<NodeIndex, NodeIndex>> competitivity_graph(const FundamentalMatrix& x);

struct LeadershipGroup {
  /// Ascending.
  std::vector<NodeIndex> leaders;
  /// Leader -> first row in which it is the strict row maximum.
  std::map<NodeIndex, NodeIndex> witness_rows;
};

/// Strict row-argmax of row j, if the maximum beats every other entry of the
/// row by more than kStrictMargin.
std::optional<NodeIndex> strict_row_argmax(const FundamentalMatrix& x, NodeIndex row);

/// Union of the strict row-argmaxes of X. Rows with ties contribute nothing.
LeadershipGroup leadership_group(const FundamentalMatrix& x);

/// S_C(i, eps): closed hull of node i's PageRank over the basis family v_{j,eps}.
struct CompetitivityInterval {
  NodeIndex node = 0;
  double epsilon = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

CompetitivityInterval competitivity_interval(const PageRankContext& ctx, NodeIndex i, double epsilon);

struct RankSwapCertificate {
  double epsilon = 0.0;
  /// pi(v_{witness_k, eps}): node i ranks strictly above node j.
  Eigen::VectorXd rank_high;
  /// pi(v_{witness_l, eps}): node i ranks strictly below node j.
  Eigen::VectorXd rank_low;
};

inline constexpr double kWitnessEpsilonFloor = 1e-12;

/// Halves epsilon from 1/2 until both basis-family personalizations realise
/// the swap. Throws ContractError for a non-competing verdict and
/// NumericalError("margin") if epsilon drops below kWitnessEpsilonFloor.
RankSwapCertificate witness_epsilon(const PageRankContext& ctx, const CompetitionVerdict& verdict);

struct LeadershipCertificate {
  NodeIndex leader = 0;
  NodeIndex row = 0;
  double epsilon = 0.0;
  /// pi(v_{row, eps}), in which the leader is the strict maximum.
  Eigen::VectorXd pagerank;
};

/// Same halving search for a leader and its witness row. Throws ContractError
/// if `row` is not a strict row-argmax at `leader`.
LeadershipCertificate leadership_certificate(const PageRankContext& ctx, NodeIndex leader, NodeIndex row);

}  // namespace pprloc
