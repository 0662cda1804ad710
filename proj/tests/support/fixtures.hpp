#pragma once

#include "pprloc/graph.hpp"
#include "pprloc/stochastic.hpp"

#include <Eigen/Dense>

#include <random>
#include <string>

namespace pprloc::testing {

inline std::string data_path(const std::string& name) { return std::string(PPRLOC_TEST_DATA) + "/" + name; }

inline DirectedGraph fixture(const std::string& name) { return load_graph(data_path(name)); }

// Printed fundamental matrices of the three example networks (alpha = 0.85),
// four decimals.
inline Eigen::MatrixXd printed_x1() {
  Eigen::MatrixXd x(3, 3);
  x << 0.4035, 0.4186, 0.1779,
       0.2982, 0.4925, 0.2093,
       0.2982, 0.3872, 0.3146;
  return x;
}

inline Eigen::MatrixXd printed_x2() {
  Eigen::MatrixXd x(5, 5);
  x << 0.3514, 0.0995, 0.1419, 0.2201, 0.1871,
       0.2410, 0.2183, 0.1611, 0.2052, 0.1744,
       0.2158, 0.0611, 0.2371, 0.2627, 0.2233,
       0.2539, 0.0719, 0.1025, 0.3090, 0.2627,
       0.2986, 0.0846, 0.1206, 0.1871, 0.3090;
  return x;
}

inline Eigen::MatrixXd printed_x3() {
  Eigen::MatrixXd x(6, 6);
  x << 0.2348, 0.0998, 0.0998, 0.3057, 0.1299, 0.1299,
       0.0998, 0.1924, 0.0424, 0.3597, 0.1529, 0.1529,
       0.0998, 0.0424, 0.1924, 0.3597, 0.1529, 0.1529,
       0,      0,      0,      0.5405, 0.2297, 0.2297,
       0,      0,      0,      0.4595, 0.3453, 0.1953,
       0,      0,      0,      0.4595, 0.1953, 0.3453;
  return x;
}

struct PrintedInterval {
  double lo;
  double hi;
};

// Printed PR(i) intervals, in node order.
inline std::vector<PrintedInterval> printed_intervals(int which) {
  switch (which) {
    case 1: return {{0.2982, 0.4035}, {0.3872, 0.4925}, {0.1779, 0.3146}};
    case 2: return {{0.2158, 0.3514}, {0.0611, 0.2183}, {0.1025, 0.2371}, {0.1871, 0.3090}, {0.1744, 0.3090}};
    default:
      return {{0, 0.2348}, {0, 0.1924}, {0, 0.1924}, {0.3057, 0.5405}, {0.1299, 0.3453}, {0.1299, 0.3453}};
  }
}

struct RandomGraphOptions {
  std::size_t min_nodes = 2;
  std::size_t max_nodes = 50;
  double edge_density = 0.2;
  double dangling_fraction = 0.3;
};

/// Labels 1..n. Each row is dangling with probability dangling_fraction,
/// otherwise links to each node with probability edge_density (at least one
/// outlink).
inline DirectedGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& o = {}) {
  std::uniform_int_distribution<std::size_t> size(o.min_nodes, o.max_nodes);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const auto n = size(rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  std::vector<std::pair<std::string, std::string>> edges;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng) < o.dangling_fraction) continue;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (coin(rng) < o.edge_density) {
        edges.emplace_back(labels[i], labels[j]);
        any = true;
      }
    }
    if (!any) edges.emplace_back(labels[i], labels[pick(rng)]);
  }
  return DirectedGraph(std::move(labels), edges);
}

/// Row-stochastic matrix with roughly half the entries zero.
inline Eigen::MatrixXd random_stochastic(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (Eigen::Index j = 0; j < q.cols(); ++j)
      if (coin(rng) < 0.5) q(i, j) = coin(rng);
    if (q.row(i).sum() == 0.0) q(i, static_cast<Eigen::Index>(rng() % n)) = 1.0;
    q.row(i) /= q.row(i).sum();
  }
  return q;
}

/// Independent route to X: (1 - alpha) * sum_k alpha^k P_u^k, truncated once
/// the remaining tail is below 1e-16.
inline Eigen::MatrixXd neumann_x(double alpha, const Eigen::MatrixXd& p_u) {
  const auto n = p_u.rows();
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd sum = term;
  double weight = 1.0;
  while (weight > 1e-17) {
    term = alpha * term * p_u;
    sum += term;
    weight *= alpha;
  }
  return (1.0 - alpha) * sum;
}

}  // namespace pprloc::testing
