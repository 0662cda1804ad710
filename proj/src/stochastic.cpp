#include "pprloc/stochastic.hpp"

#include "pprloc/error.hpp"

#include <cmath>
#include <sstream>

namespace pprloc {

Damping::Damping(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "damping factor must lie in (0, 1), got " << alpha;
    throw DomainError(msg.str());
  }
}

template <class Tag>
ProbabilityVector<Tag>::ProbabilityVector(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() == 0) throw DomainError("probability vector is empty");
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "probability vector entry " << i << " must be strictly positive, got " << values_[i];
      throw DomainError(msg.str());
    }
  }
  const double sum = values_.sum();
  if (std::abs(sum - 1.0) > kStochasticTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probability vector must sum to 1, sums to " << sum;
    throw DomainError(msg.str());
  }
}

template class ProbabilityVector<DanglingTag>;
template class ProbabilityVector<PersonalizationTag>;

RowStochasticMatrix RowStochasticMatrix::from_stochastic(Eigen::MatrixXd q) {
  if (q.rows() == 0 || q.rows() != q.cols()) throw DomainError("stochastic matrix must be square and non-empty");
  if ((q.array() < 0.0).any() || (q.array() > 1.0).any())
    throw DomainError("stochastic matrix entries must lie in [0, 1]");
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    if (std::abs(q.row(i).sum() - 1.0) > kStochasticTolerance)
      throw DomainError("row " + std::to_string(i) + " of stochastic matrix does not sum to 1");
  }
  return RowStochasticMatrix(std::move(q), true);
}

RowStochasticMatrix row_stochastic(const DirectedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    const auto& succ = g.successors(i);
    if (succ.empty()) continue;
    const double w = 1.0 / static_cast<double>(succ.size());
    for (auto j : succ) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
  }
  return RowStochasticMatrix(std::move(p), false);
}

RowStochasticMatrix patch_dangling(const RowStochasticMatrix& p, const DanglingIndicator& d,
                                   const DanglingDistribution& u) {
  if (p.dangling_patched()) throw ContractError("matrix is already patched for dangling nodes");
  const auto n = p.size();
  if (d.d.size() != n || u.size() != n) throw DomainError("dangling vectors do not match matrix size");
  Eigen::MatrixXd out = p.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    if (d.d[i]) out.row(static_cast<Eigen::Index>(i)) += u.values().transpose();
  }
  return RowStochasticMatrix(std::move(out), true);
}

GoogleMatrix google_matrix(Damping alpha, const RowStochasticMatrix& p_u,
                           const PersonalizationVector& v) {
  if (!p_u.dangling_patched()) throw ContractError("Google matrix needs the dangling-patched matrix");
  if (v.size() != p_u.size()) throw DomainError("personalization vector does not match matrix size");
  const double a = alpha.value();
  Eigen::MatrixXd g = a * p_u.matrix();
  g.rowwise() += ((1.0 - a) * v.values()).transpose();
  return GoogleMatrix{std::move(g), alpha};
}

std::size_t default_max_iterations(Damping alpha, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tolerance must lie in (0, 1)");
  return 10 * static_cast<std::size_t>(std::ceil(std::log(tol) / std::log(alpha.value())));
}

PageRankVector pagerank_power(const GoogleMatrix& gm, double tol, std::size_t max_iter) {
  if (max_iter == 0) max_iter = default_max_iterations(gm.alpha, tol);
  const auto n = gm.g.rows();
  const Eigen::MatrixXd gt = gm.g.transpose();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd next(n);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < max_iter; ++it) {
    next.noalias() = gt * x;
    residual = (next - x).lpNorm<1>();
    if (residual <= tol) return PageRankVector{x / x.sum(), residual, it};
    x = next / next.sum();
  }
  std::ostringstream msg;
  msg << "power iteration did not converge in " << max_iter << " iterations (residual " << residual
      << ")";
  throw NumericalError("non_convergence", msg.str(), residual);
}

struct TransposedSystem::Impl {
  Eigen::MatrixXd system;  // (I - alpha P_u)^T
  Eigen::MatrixXd scaled_pt;  // alpha P_u^T, iterative path only
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
  SolverOptions options;

  template <class M>
  M fixed_point(const M& b) const {
    M x = b;
    for (std::size_t it = 0; it < options.fixed_point_max_iter; ++it) {
      M next = scaled_pt * x + b;
      const double change = (next - x).cwiseAbs().sum();
      x = std::move(next);
      if (change <= options.fixed_point_tolerance * x.cwiseAbs().sum()) break;
    }
    return x;
  }
};

TransposedSystem::TransposedSystem(Damping alpha, const RowStochasticMatrix& p_u, SolverOptions options)
    : alpha_(alpha), n_(p_u.size()), impl_(std::make_unique<Impl>()) {
  if (!p_u.dangling_patched()) throw ContractError("linear system needs the dangling-patched matrix");
  const auto n = static_cast<Eigen::Index>(n_);
  impl_->options = options;
  impl_->system = Eigen::MatrixXd::Identity(n, n) - alpha.value() * p_u.matrix().transpose();
  if (n_ <= options.dense_limit) {
    impl_->lu.emplace(impl_->system);
  } else {
    impl_->scaled_pt = alpha.value() * p_u.matrix().transpose();
  }
}

TransposedSystem::~TransposedSystem() = default;
TransposedSystem::TransposedSystem(TransposedSystem&&) noexcept = default;
TransposedSystem& TransposedSystem::operator=(TransposedSystem&&) noexcept = default;

bool TransposedSystem::dense() const noexcept { return impl_->lu.has_value(); }

Eigen::VectorXd TransposedSystem::solve(const Eigen::VectorXd& b) const {
  if (static_cast<std::size_t>(b.size()) != n_) throw DomainError("right-hand side has the wrong size");
  if (impl_->lu) return impl_->lu->solve(b);
  return impl_->fixed_point(b);
}

Eigen::MatrixXd TransposedSystem::solve(const Eigen::MatrixXd& b) const {
  if (static_cast<std::size_t>(b.rows()) != n_) throw DomainError("right-hand side has the wrong size");
  if (impl_->lu) return impl_->lu->solve(b);
  return impl_->fixed_point(b);
}

double TransposedSystem::residual(const Eigen::VectorXd& x, const Eigen::VectorXd& b) const {
  return (impl_->system * x - b).lpNorm<Eigen::Infinity>();
}

PageRankVector pagerank_solve(const TransposedSystem& system, const PersonalizationVector& v) {
  if (v.size() != system.size()) throw DomainError("personalization vector does not match graph size");
  const Eigen::VectorXd rhs = (1.0 - system.alpha().value()) * v.values();
  PageRankVector out{system.solve(rhs), 0.0, 0};
  out.residual = system.residual(out.pi, rhs);
  if (!(out.residual <= kSolveResidualLimit)) {
    std::ostringstream msg;
    msg << "linear solve residual " << out.residual << " exceeds " << kSolveResidualLimit;
    throw NumericalError("solver_residual", msg.str(), out.residual);
  }
  return out;
}

PageRankVector pagerank_solve(Damping alpha, const RowStochasticMatrix& p_u,
                              const PersonalizationVector& v) {
  return pagerank_solve(TransposedSystem(alpha, p_u), v);
}

}  // namespace pprloc
