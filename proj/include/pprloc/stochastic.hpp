#pragma once

#include "pprloc/graph.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <span>

namespace pprloc {

inline constexpr double kDefaultAlpha = 0.85;
/// Row sums and probability-vector sums are validated to this tolerance.
inline constexpr double kStochasticTolerance = 1e-12;
/// A linear solve whose residual (infinity norm) exceeds this is a failure.
inline constexpr double kSolveResidualLimit = 1e-10;
inline constexpr double kDefaultPowerTolerance = 1e-12;

/// Damping factor, always inside the open interval (0, 1).
class Damping {
public:
  explicit Damping(double alpha = kDefaultAlpha);
  double value() const noexcept { return alpha_; }

private:
  double alpha_;
};

/// Strictly positive vector summing to one. The tag distinguishes the
/// dangling-node distribution from the personalization vector.
template <class Tag>
class ProbabilityVector {
public:
  /// Throws DomainError if an entry is not strictly positive or the sum is off
  /// by more than kStochasticTolerance.
  explicit ProbabilityVector(Eigen::VectorXd values);

  static ProbabilityVector uniform(std::size_t n) {
    return ProbabilityVector(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / n));
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd& values() const noexcept { return values_; }

private:
  Eigen::VectorXd values_;
};

struct DanglingTag {};
struct PersonalizationTag {};
using DanglingDistribution = ProbabilityVector<DanglingTag>;
using PersonalizationVector = ProbabilityVector<PersonalizationTag>;

extern template class ProbabilityVector<DanglingTag>;
extern template class ProbabilityVector<PersonalizationTag>;

/// P (dangling rows zero) or its patched form P + d u^T.
class RowStochasticMatrix {
public:
  /// Wraps an arbitrary row-stochastic matrix (every row sums to one). Used
  /// for matrices that do not come from a graph.
  static RowStochasticMatrix from_stochastic(Eigen::MatrixXd q);

  const Eigen::MatrixXd& matrix() const noexcept { return p_; }
  bool dangling_patched() const noexcept { return patched_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(p_.rows()); }

private:
  RowStochasticMatrix(Eigen::MatrixXd p, bool patched) : p_(std::move(p)), patched_(patched) {}

  friend RowStochasticMatrix row_stochastic(const DirectedGraph&);
  friend RowStochasticMatrix patch_dangling(const RowStochasticMatrix&, const DanglingIndicator&,
                                            const DanglingDistribution&);

  Eigen::MatrixXd p_;
  bool patched_;
};

/// p[i][j] = a[i][j] / kout(i); dangling rows stay zero.
RowStochasticMatrix row_stochastic(const DirectedGraph& g);

/// Returns P + d u^T. Throws ContractError if `p` is already patched and
/// DomainError on size mismatch.
RowStochasticMatrix patch_dangling(const RowStochasticMatrix& p, const DanglingIndicator& d,
                                   const DanglingDistribution& u);

struct GoogleMatrix {
  Eigen::MatrixXd g;
  Damping alpha;
};

/// alpha * P_u + (1 - alpha) e v^T.
GoogleMatrix google_matrix(Damping alpha, const RowStochasticMatrix& p_u,
                           const PersonalizationVector& v);

struct PageRankVector {
  Eigen::VectorXd pi;
  /// Power method: ||pi^T G - pi^T||_1. Linear solve: infinity-norm residual
  /// of the transposed system.
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// 10 * ceil(log(tol) / log(alpha)).
std::size_t default_max_iterations(Damping alpha, double tol);

/// Power iteration x^T <- x^T G from the uniform vector. max_iter = 0 picks
/// default_max_iterations. Throws NumericalError("non_convergence") carrying
/// the last residual.
PageRankVector pagerank_power(const GoogleMatrix& gm, double tol = kDefaultPowerTolerance,
                              std::size_t max_iter = 0);

struct SolverOptions {
  /// Dense LU up to this size, matrix-free fixed point above it.
  std::size_t dense_limit = 2000;
  double fixed_point_tolerance = 1e-15;
  std::size_t fixed_point_max_iter = 100000;
};

/// Solves (I - alpha P_u)^T x = b for many right-hand sides. The dense path
/// factors once at construction.
class TransposedSystem {
public:
  TransposedSystem(Damping alpha, const RowStochasticMatrix& p_u, SolverOptions options = {});
  ~TransposedSystem();
  TransposedSystem(TransposedSystem&&) noexcept;
  TransposedSystem& operator=(TransposedSystem&&) noexcept;

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  /// Solves for every column of `b` at once.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

  /// ||(I - alpha P_u)^T x - b||_inf
  double residual(const Eigen::VectorXd& x, const Eigen::VectorXd& b) const;

  bool dense() const noexcept;
  Damping alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return n_; }

private:
  struct Impl;
  Damping alpha_;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

/// pi^T = (1 - alpha) v^T (I - alpha P_u)^{-1}, via one linear solve.
/// Throws ContractError if p_u is not patched and NumericalError if the
/// residual exceeds kSolveResidualLimit.
PageRankVector pagerank_solve(Damping alpha, const RowStochasticMatrix& p_u,
                              const PersonalizationVector& v);

/// Same, reusing a factored system.
PageRankVector pagerank_solve(const TransposedSystem& system, const PersonalizationVector& v);

}  // namespace pprloc
