#include "pprloc/competition.hpp"

#include "pprloc/error.hpp"

#include <algorithm>
#include <sstream>

namespace pprloc {

CompetitionVerdict effective_competitors(const FundamentalMatrix& x, NodeIndex i, NodeIndex j) {
  const auto n = x.size();
  if (i >= n || j >= n) throw DomainError("node index out of range");
  if (i == j) throw DomainError("a node cannot compete with itself");
  CompetitionVerdict verdict;
  verdict.i = i;
  verdict.j = j;
  for (NodeIndex k = 0; k < n; ++k) {
    const double diff = x(k, i) - x(k, j);
    if (!verdict.witness_k && diff > kStrictMargin) verdict.witness_k = k;
    if (!verdict.witness_l && -diff > kStrictMargin) verdict.witness_l = k;
  }
  verdict.competes = verdict.witness_k && verdict.witness_l;
  return verdict;
}

std::vector<std::pair<NodeIndex, NodeIndex>> competitivity_graph(const FundamentalMatrix& x) {
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  for (NodeIndex i = 0; i < x.size(); ++i)
    for (NodeIndex j = i + 1; j < x.size(); ++j)
      if (effective_competitors(x, i, j).competes) pairs.emplace_back(i, j);
  return pairs;
}

std::optional<NodeIndex> strict_row_argmax(const FundamentalMatrix& x, NodeIndex row) {
  const auto n = x.size();
  if (row >= n) throw DomainError("row index out of range");
  NodeIndex best = 0;
  for (NodeIndex k = 1; k < n; ++k)
    if (x(row, k) > x(row, best)) best = k;
  for (NodeIndex k = 0; k < n; ++k)
    if (k != best && !(x(row, best) - x(row, k) > kStrictMargin)) return std::nullopt;
  return best;
}

LeadershipGroup leadership_group(const FundamentalMatrix& x) {
  LeadershipGroup group;
  for (NodeIndex row = 0; row < x.size(); ++row) {
    if (auto leader = strict_row_argmax(x, row)) group.witness_rows.emplace(*leader, row);
  }
  for (const auto& [leader, row] : group.witness_rows) group.leaders.push_back(leader);
  return group;
}

CompetitivityInterval competitivity_interval(const PageRankContext& ctx, NodeIndex i, double epsilon) {
  const auto n = ctx.size();
  if (i >= n) throw DomainError("node index out of range");
  CompetitivityInterval out{i, epsilon, 0.0, 0.0};
  const auto idx = static_cast<Eigen::Index>(i);
  for (NodeIndex j = 0; j < n; ++j) {
    const double value = ctx.pagerank(basis_family(j, epsilon, n).v)[idx];
    if (j == 0 || value < out.lo) out.lo = value;
    if (j == 0 || value > out.hi) out.hi = value;
  }
  return out;
}

RankSwapCertificate witness_epsilon(const PageRankContext& ctx, const CompetitionVerdict& verdict) {
  if (!verdict.competes || !verdict.witness_k || !verdict.witness_l)
    throw ContractError("witness search needs a competing verdict");
  const auto n = ctx.size();
  const auto i = static_cast<Eigen::Index>(verdict.i);
  const auto j = static_cast<Eigen::Index>(verdict.j);
  for (double eps = 0.5; eps >= kWitnessEpsilonFloor; eps /= 2.0) {
    Eigen::VectorXd high = ctx.pagerank(basis_family(*verdict.witness_k, eps, n).v);
    if (!(high[i] - high[j] > kRankResolution)) continue;
    Eigen::VectorXd low = ctx.pagerank(basis_family(*verdict.witness_l, eps, n).v);
    if (!(low[j] - low[i] > kRankResolution)) continue;
    return RankSwapCertificate{eps, std::move(high), std::move(low)};
  }
  std::ostringstream msg;
  msg << "no rank-swap certificate for nodes " << verdict.i << " and " << verdict.j
      << " with epsilon >= " << kWitnessEpsilonFloor;
  throw NumericalError("margin", msg.str(), kWitnessEpsilonFloor);
}

LeadershipCertificate leadership_certificate(const PageRankContext& ctx, NodeIndex leader, NodeIndex row) {
  if (strict_row_argmax(ctx.x(), row) != leader)
    throw ContractError("row " + std::to_string(row) + " does not single out node " + std::to_string(leader));
  const auto n = ctx.size();
  const auto top = static_cast<Eigen::Index>(leader);
  for (double eps = 0.5; eps >= kWitnessEpsilonFloor; eps /= 2.0) {
    Eigen::VectorXd pi = ctx.pagerank(basis_family(row, eps, n).v);
    bool strict = true;
    for (Eigen::Index k = 0; k < pi.size() && strict; ++k)
      if (k != top && !(pi[top] - pi[k] > kRankResolution)) strict = false;
    if (strict) return LeadershipCertificate{leader, row, eps, std::move(pi)};
  }
  throw NumericalError("margin", "no leadership certificate for node " + std::to_string(leader),
                       kWitnessEpsilonFloor);
}

}  // namespace pprloc
