#pragma once

#include "pprloc/localization.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pprloc {

/// Counter-based uniform draw in the open interval (0, 1). Pure function of
/// (seed, counter), so batches can be generated in any order.
double uniform_draw(std::uint64_t seed, std::uint64_t counter);

/// Seed for the s-th sample of a run seeded with `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t s);

/// Log-weights more than this far below the largest one are clamped, which
/// keeps every sampled entry at least exp(-25) times the largest.
inline constexpr double kLogWeightFloor = 25.0;

/// Weights exp(log(U_k) / concentration), normalised. concentration = 1 gives
/// normalised uniforms; small values push samples towards simplex vertices.
/// Throws DomainError for n = 0 or concentration <= 0.
PersonalizationVector sample_personalization(std::uint64_t seed, std::size_t n, double concentration);

inline constexpr double kUniformConcentration[] = {1.0};
/// Schedule cycling from uniform-like to strongly vertex-biased draws.
inline constexpr double kMixedConcentrations[] = {1.0, 0.1, 0.01};

struct SampleReport {
  NodeIndex node = 0;
  std::size_t samples = 0;
  double observed_min = 0.0;
  double observed_max = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t violations = 0;
  /// First personalization whose PageRank left the open interval.
  std::optional<Eigen::VectorXd> offending_v;
};

/// One report per node. Sample s uses concentrations[s % size]. Every sample
/// is solved through the factored system, not read off X.
std::vector<SampleReport> monte_carlo_intervals(const PageRankContext& ctx, std::size_t samples,
                                                std::uint64_t seed,
                                                std::span<const double> concentrations = kUniformConcentration);

SampleReport monte_carlo_interval(const PageRankContext& ctx, NodeIndex i, std::size_t samples,
                                  std::uint64_t seed,
                                  std::span<const double> concentrations = kUniformConcentration);

/// True iff sampled personalizations produce both strict orderings of nodes
/// i and j. Throws DomainError for i == j.
bool observe_rank_swaps(const PageRankContext& ctx, NodeIndex i, NodeIndex j, std::size_t samples,
                        std::uint64_t seed,
                        std::span<const double> concentrations = kMixedConcentrations);

/// Dense Gauss-Jordan inverse with partial pivoting. Throws NumericalError on
/// a singular pivot.
Eigen::MatrixXd gauss_jordan_inverse(const Eigen::MatrixXd& a);

inline constexpr std::size_t kExplicitInverseCap = 10;
inline constexpr double kOracleDeviationLimit = 1e-10;

/// Max |X_ij - (1 - alpha)(I - alpha P_u)^{-1}_ij| with the inverse formed by
/// Gauss-Jordan elimination. Throws DomainError when n > n_cap and
/// NumericalError("oracle_mismatch") above kOracleDeviationLimit.
double explicit_inverse_check(Damping alpha, const RowStochasticMatrix& p_u,
                              std::size_t n_cap = kExplicitInverseCap);

/// Same check against an already-computed X.
double explicit_inverse_check(const FundamentalMatrix& x, const RowStochasticMatrix& p_u,
                              std::size_t n_cap = kExplicitInverseCap);

}  // namespace pprloc
