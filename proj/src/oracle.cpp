#include "pprloc/oracle.hpp"

#include "pprloc/competition.hpp"
#include "pprloc/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pprloc {

namespace {

// SplitMix64 finaliser.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double uniform_draw(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = mix(mix(seed) ^ counter);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t s) { return mix(seed ^ mix(~s)); }

PersonalizationVector sample_personalization(std::uint64_t seed, std::size_t n, double concentration) {
  if (n == 0) throw DomainError("cannot sample an empty personalization");
  if (!(concentration > 0.0)) throw DomainError("concentration must be positive");
  Eigen::VectorXd logw(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k)
    logw[static_cast<Eigen::Index>(k)] = std::log(uniform_draw(seed, k)) / concentration;
  const double top = logw.maxCoeff();
  Eigen::VectorXd w = (logw.array() - top).max(-kLogWeightFloor).exp().matrix();
  w /= w.sum();
  return PersonalizationVector(std::move(w));
}

std::vector<SampleReport> monte_carlo_intervals(const PageRankContext& ctx, std::size_t samples,
                                                std::uint64_t seed, std::span<const double> concentrations) {
  if (concentrations.empty()) throw DomainError("empty concentration schedule");
  const auto intervals = pr_intervals(ctx.x());
  const auto n = ctx.size();
  std::vector<SampleReport> reports(n);
  for (NodeIndex i = 0; i < n; ++i) {
    reports[i].node = i;
    reports[i].lo = intervals[i].lo;
    reports[i].hi = intervals[i].hi;
    reports[i].observed_min = std::numeric_limits<double>::infinity();
    reports[i].observed_max = -std::numeric_limits<double>::infinity();
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const auto v = sample_personalization(sample_seed(seed, s), n, concentrations[s % concentrations.size()]);
    const Eigen::VectorXd pi = ctx.pagerank(v);
    for (NodeIndex i = 0; i < n; ++i) {
      auto& r = reports[i];
      const double value = pi[static_cast<Eigen::Index>(i)];
      ++r.samples;
      r.observed_min = std::min(r.observed_min, value);
      r.observed_max = std::max(r.observed_max, value);
      if (!intervals[i].contains(value)) {
        if (r.violations++ == 0) r.offending_v = v.values();
      }
    }
  }
  return reports;
}

SampleReport monte_carlo_interval(const PageRankContext& ctx, NodeIndex i, std::size_t samples,
                                  std::uint64_t seed, std::span<const double> concentrations) {
  if (i >= ctx.size()) throw DomainError("node index out of range");
  return std::move(monte_carlo_intervals(ctx, samples, seed, concentrations)[i]);
}

bool observe_rank_swaps(const PageRankContext& ctx, NodeIndex i, NodeIndex j, std::size_t samples,
                        std::uint64_t seed, std::span<const double> concentrations) {
  const auto n = ctx.size();
  if (i >= n || j >= n) throw DomainError("node index out of range");
  if (i == j) throw DomainError("rank swaps need two distinct nodes");
  if (concentrations.empty()) throw DomainError("empty concentration schedule");
  bool above = false;
  bool below = false;
  for (std::size_t s = 0; s < samples && !(above && below); ++s) {
    const auto v = sample_personalization(sample_seed(seed, s), n, concentrations[s % concentrations.size()]);
    const Eigen::VectorXd pi = ctx.pagerank(v);
    const double diff = pi[static_cast<Eigen::Index>(i)] - pi[static_cast<Eigen::Index>(j)];
    above = above || diff > kRankResolution;
    below = below || -diff > kRankResolution;
  }
  return above && below;
}

Eigen::MatrixXd gauss_jordan_inverse(const Eigen::MatrixXd& a) {
  const auto n = static_cast<std::size_t>(a.rows());
  // Augmented [A | I], row-major.
  std::vector<std::vector<double>> m(n, std::vector<double>(2 * n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    m[r][n + r] = 1.0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0.0) throw NumericalError("singular", "matrix is singular");
    std::swap(m[pivot], m[col]);
    const double inv = 1.0 / m[col][col];
    for (auto& value : m[col]) value *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0.0) continue;
      const double f = m[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r][n + c];
  return out;
}

double explicit_inverse_check(const FundamentalMatrix& x, const RowStochasticMatrix& p_u, std::size_t n_cap) {
  const auto n = p_u.size();
  if (n > n_cap)
    throw DomainError("explicit inverse check limited to n <= " + std::to_string(n_cap) + ", got " +
                      std::to_string(n));
  if (x.size() != n) throw DomainError("fundamental matrix does not match the stochastic matrix");
  const double a = x.alpha.value();
  const auto dim = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd y = Eigen::MatrixXd::Identity(dim, dim) - a * p_u.matrix();
  const Eigen::MatrixXd reference = (1.0 - a) * gauss_jordan_inverse(y);
  const double deviation = (reference - x.x).cwiseAbs().maxCoeff();
  if (!(deviation <= kOracleDeviationLimit)) {
    std::ostringstream msg;
    msg << "fundamental matrix deviates from explicit inverse by " << deviation;
    throw NumericalError("oracle_mismatch", msg.str(), deviation);
  }
  return deviation;
}

double explicit_inverse_check(Damping alpha, const RowStochasticMatrix& p_u, std::size_t n_cap) {
  if (p_u.size() > n_cap)
    throw DomainError("explicit inverse check limited to n <= " + std::to_string(n_cap) + ", got " +
                      std::to_string(p_u.size()));
  return explicit_inverse_check(fundamental_matrix(alpha, p_u), p_u, n_cap);
}

}  // namespace pprloc
