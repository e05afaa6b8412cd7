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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsbo/errors.hpp"

namespace dsbo {

/// One stochastic draw handed to the gradient oracles.  Dataset-backed
/// problems read `indices` (a batch into the split that owns the oracle);
/// noise-perturbed problems read the pre-drawn standard normal vectors.
/// Evaluating two gradients with the same Sample reuses the same draw, which
/// is what makes the shared-sample cancellation in the penalty gradient exact.
struct Sample {
  std::vector<std::int32_t> indices;
  Eigen::VectorXd noise_upper;  // perturbation for x-block outputs (dim p)
  Eigen::VectorXd noise_lower;  // perturbation for y-block outputs (dim q)

  bool deterministic() const {
    return indices.empty() && noise_upper.size() == 0 && noise_lower.size() == 0;
  }
};

/// Labeled sample block owned by one agent.
struct Dataset {
  Eigen::MatrixXd features;  // one row per sample
  std::vector<int> labels;
  std::string split;  // "train" | "val" | "test"
  int agent = -1;

  int size() const { return static_cast<int>(features.rows()); }
};

/// Per-agent first-order oracle pair (f_i, g_i) of a distributed bilevel
/// problem.  Everything is const and pure: randomness enters only through the
/// Sample argument, so evaluators may be called concurrently.
class BilevelProblem {
 public:
  virtual ~BilevelProblem() = default;

  virtual int upper_dim() const = 0;   // p
  virtual int lower_dim() const = 0;   // q
  virtual int num_agents() const = 0;  // n

  virtual double upper_loss(int agent, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y) const = 0;
  virtual double lower_loss(int agent, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y) const = 0;

  virtual Eigen::VectorXd grad_x_f(int agent, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y) const = 0;
  virtual Eigen::VectorXd grad_y_f(int agent, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y) const = 0;
  virtual Eigen::VectorXd grad_x_g(int agent, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y) const = 0;
  virtual Eigen::VectorXd grad_y_g(int agent, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y) const = 0;

  virtual Eigen::VectorXd grad_x_f_stoch(int agent, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y,
                                         const Sample& xi) const = 0;
  virtual Eigen::VectorXd grad_y_f_stoch(int agent, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y,
                                         const Sample& xi) const = 0;
  virtual Eigen::VectorXd grad_x_g_stoch(int agent, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y,
                                         const Sample& psi) const = 0;
  virtual Eigen::VectorXd grad_y_g_stoch(int agent, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y,
                                         const Sample& psi) const = 0;

  // Sampling metadata consumed by the oracle module.  A count of 0 means the
  // corresponding oracle has no finite sample space (noise-based or exact).
  virtual int upper_sample_count(int agent) const = 0;
  virtual int lower_sample_count(int agent) const = 0;
  virtual bool uses_noise_samples() const { return false; }

  virtual bool has_exact_lower_solution() const { return false; }
  virtual bool has_exact_hypergradient() const { return false; }
  virtual Eigen::VectorXd exact_lower_solution(const Eigen::VectorXd&) const {
    throw CapabilityMissing("problem has no closed-form lower solution");
  }
  virtual Eigen::VectorXd exact_hypergradient(const Eigen::VectorXd&) const {
    throw CapabilityMissing("problem has no closed-form hypergradient");
  }

  virtual bool has_test_accuracy() const { return false; }
  virtual double test_accuracy(const Eigen::VectorXd&) const {
    throw CapabilityMissing("problem has no held-out test data");
  }

  // Penalty threshold 2*l_{f,1}/mu_g where the smoothness constants are
  // known; nullopt when they are only estimated.
  virtual std::optional<double> penalty_alpha_threshold() const {
    return std::nullopt;
  }

  // Target gradient norm for the full-batch inner solves used by the metric
  // oracles.  Problems with exact arithmetic structure can afford a tighter
  // tolerance.
  virtual double suggested_inner_tol() const { return 1e-7; }

 protected:
  void require_shapes(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    if (x.size() != upper_dim())
      throw DimensionMismatch("x has dimension " + std::to_string(x.size()) +
                              ", expected " + std::to_string(upper_dim()));
    if (y.size() != lower_dim())
      throw DimensionMismatch("y has dimension " + std::to_string(y.size()) +
                              ", expected " + std::to_string(lower_dim()));
  }
  void require_agent(int agent) const {
    if (agent < 0 || agent >= num_agents())
      throw IndexOutOfRange("agent index " + std::to_string(agent) +
                            " outside [0, " + std::to_string(num_agents()) + ")");
  }
};

// Agent averages of the deterministic oracles; these realize the bar-notation
// objectives f-bar and g-bar used by the metric layer.

inline double mean_upper_loss(const BilevelProblem& problem,
                              const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (int i = 0; i < problem.num_agents(); ++i) acc += problem.upper_loss(i, x, y);
  return acc / problem.num_agents();
}

inline double mean_lower_loss(const BilevelProblem& problem,
                              const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (int i = 0; i < problem.num_agents(); ++i) acc += problem.lower_loss(i, x, y);
  return acc / problem.num_agents();
}

inline Eigen::VectorXd mean_grad_x_f(const BilevelProblem& problem,
                                     const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(problem.upper_dim());
  for (int i = 0; i < problem.num_agents(); ++i) acc += problem.grad_x_f(i, x, y);
  return acc / problem.num_agents();
}

inline Eigen::VectorXd mean_grad_y_f(const BilevelProblem& problem,
                                     const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(problem.lower_dim());
  for (int i = 0; i < problem.num_agents(); ++i) acc += problem.grad_y_f(i, x, y);
  return acc / problem.num_agents();
}

inline Eigen::VectorXd mean_grad_x_g(const BilevelProblem& problem,
                                     const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(problem.upper_dim());
  for (int i = 0; i < problem.num_agents(); ++i) acc += problem.grad_x_g(i, x, y);
  return acc / problem.num_agents();
}

inline Eigen::VectorXd mean_grad_y_g(const BilevelProblem& problem,
                                     const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(problem.lower_dim());
  for (int i = 0; i < problem.num_agents(); ++i) acc += problem.grad_y_g(i, x, y);
  return acc / problem.num_agents();
}

}  // namespace dsbo
