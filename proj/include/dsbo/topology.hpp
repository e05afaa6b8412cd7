// Copyright 2025 The dsbo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dsbo/errors.hpp"

namespace dsbo {

/// Symmetric doubly stochastic gossip matrix together with its mixing rate
/// rho = max(|lambda_2|, |lambda_n|).  Immutable after construction.
struct MixingMatrix {
  int n = 0;
  Eigen::MatrixXd weights;
  double rho = 0.0;
};

/// Mixing rate of a symmetric doubly stochastic matrix: the largest absolute
/// eigenvalue once one copy of the Perron eigenvalue 1 is removed.  Returns 0
/// for n = 1.  Throws NotDoublyStochastic when the input violates the
/// structural requirements by more than 1e-10.
inline double spectral_quantity(const Eigen::MatrixXd& weights) {
  const auto n = weights.rows();
  if (n != weights.cols()) throw DimensionMismatch("weights must be square");
  constexpr double kStructTol = 1e-10;
  if ((weights - weights.transpose()).cwiseAbs().maxCoeff() > kStructTol)
    throw NotDoublyStochastic("weights not symmetric");
  if (weights.minCoeff() < -kStructTol)
    throw NotDoublyStochastic("weights have negative entries");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(weights.row(i).sum() - 1.0) > kStructTol)
      throw NotDoublyStochastic("row sums differ from 1");
    if (std::abs(weights.col(i).sum() - 1.0) > kStructTol)
      throw NotDoublyStochastic("column sums differ from 1");
  }
  if (n == 1) return 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(weights,
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd evs = solver.eigenvalues();  // ascending
  // Drop one copy of the eigenvalue closest to 1 (the consensus direction).
  Eigen::Index top = 0;
  (evs.array() - 1.0).abs().minCoeff(&top);
  double rho = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == top) continue;
    rho = std::max(rho, std::abs(evs[i]));
  }
  return rho;
}

/// Complete-graph averaging: every entry 1/n.  rho = 0 for all n >= 1.
inline MixingMatrix build_complete(int n) {
  if (n < 1) throw DimensionMismatch("agent count must be positive");
  MixingMatrix w;
  w.n = n;
  w.weights = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  w.rho = spectral_quantity(w.weights);
  return w;
}

/// Ring with uniform weight 1/3 on self and the two neighbors.  Falls back to
/// the complete graph for n <= 2 where a ring degenerates.
inline MixingMatrix build_ring(int n) {
  if (n < 1) throw DimensionMismatch("agent count must be positive");
  if (n <= 2) return build_complete(n);
  MixingMatrix w;
  w.n = n;
  w.weights = Eigen::MatrixXd::Zero(n, n);
  const double third = 1.0 / 3.0;
  for (int i = 0; i < n; ++i) {
    w.weights(i, i) = third;
    w.weights(i, (i + 1) % n) = third;
    w.weights(i, (i + n - 1) % n) = third;
  }
  w.rho = spectral_quantity(w.weights);
  return w;
}

namespace detail {

// Union-find connectivity over an explicit edge list.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// Metropolis-Hastings weights on an undirected simple graph:
/// w_ij = 1/(1 + max(deg_i, deg_j)) on edges, diagonal absorbs the rest.
/// The edge list must describe a connected graph, otherwise rho would be 1.
inline MixingMatrix build_metropolis(int n,
                                     const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw DimensionMismatch("agent count must be positive");
  std::vector<int> degree(n, 0);
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  detail::DisjointSets components(n);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw IndexOutOfRange("edge endpoint outside [0, n)");
    if (a == b) throw SelfLoop("self loop at vertex " + std::to_string(a));
    const int lo = std::min(a, b), hi = std::max(a, b);
    if (seen[lo][hi])
      throw DuplicateEdge("duplicate edge (" + std::to_string(lo) + ", " +
                          std::to_string(hi) + ")");
    seen[lo][hi] = true;
    ++degree[a];
    ++degree[b];
    components.unite(a, b);
  }
  for (int v = 1; v < n; ++v)
    if (components.find(v) != components.find(0))
      throw DisconnectedGraph("edge list does not connect all agents");

  MixingMatrix w;
  w.n = n;
  w.weights = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!seen[a][b]) continue;
      const double wij = 1.0 / (1.0 + std::max(degree[a], degree[b]));
      w.weights(a, b) = wij;
      w.weights(b, a) = wij;
    }
  }
  for (int a = 0; a < n; ++a)
    w.weights(a, a) = 1.0 - w.weights.row(a).sum();
  w.rho = spectral_quantity(w.weights);
  return w;
}

/// One gossip round applied to a column-per-agent block: returns block * W.
/// Preserves the column mean and contracts the deviation from it by rho.
inline Eigen::MatrixXd mix(const Eigen::MatrixXd& block, const MixingMatrix& w) {
  if (block.cols() != w.n)
    throw DimensionMismatch("block has " + std::to_string(block.cols()) +
                            " columns, mixing matrix expects " +
                            std::to_string(w.n));
  return block * w.weights;
}

}  // namespace dsbo
