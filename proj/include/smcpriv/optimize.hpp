// Copyright 2026 The smcpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smcpriv/leakage.hpp"
#include "smcpriv/randomize.hpp"
#include "smcpriv/scenario.hpp"

namespace smcpriv {

struct SolverKnobs {
  int n_starts = 32;               // Dirichlet-sampled starts
  double dirichlet_concentration = 1.0;
  int n_hops = 8;                  // perturbation rounds after the starts
  double hop_mix_weight = 0.3;     // fresh-Dirichlet weight in a perturbation
  int max_iterations = 5000;       // per local solve
  double pg_tolerance = 1e-8;      // projected-gradient stationarity
  std::uint64_t seed = 0;
  unsigned threads = 0;            // 0 = hardware concurrency
};

// Maximize the prior-weighted average awae of the additive randomization
// over virtual distributions on the given support (usually [-Delta, Delta]).
struct OptProblem {
  ScenarioSpec scenario;
  std::vector<Value> phi_support;  // sorted, distinct
  EntropyOrder order = EntropyOrder::infinity();
  double epsilon = 1e-2;
  SolverKnobs knobs;

  ApproximationSpec approximation() const;
  void validate() const;
};

OptProblem make_problem(const ScenarioSpec& s, Value delta_max,
                        double epsilon, SolverKnobs knobs = {});
// Same problem over an explicit support list (exercises the theory on
// supports like {0, 1} that are not distortion windows).
OptProblem make_problem_with_support(const ScenarioSpec& s,
                                     std::vector<Value> support,
                                     double epsilon, SolverKnobs knobs = {});

// Offset that makes the smoothed optimum epsilon-accurate:
//   delta = (1 - 1/alpha) * epsilon * beta * ln 2 / (n_outputs * n_guesses).
double delta_for_accuracy(double epsilon, double alpha, double beta,
                          std::size_t n_outputs, std::size_t n_guesses);

// Finite order whose rescaled optimum under-approximates the order-infinity
// optimum within epsilon/... : alpha = (2/epsilon) * log2(n_guesses), floored
// at 2 (a single guess would otherwise force alpha = infinity).
double alpha_for_accuracy(double epsilon, std::size_t n_guesses);

// Prior-weighted average awae of the randomized computation, evaluated on
// the exact leakage path at the problem's order. Errors if pi_phi leaves the
// problem's support window.
double objective(const OptProblem& p, const DiscreteDist& pi_phi,
                 const LeakageOptions& opts = {});

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

// Precomputed linear structure of the randomized fibers: for each attacker
// input with positive prior mass and each reachable output o', the guess
// weights are linear in pi_phi with coefficients
//   C[o'][w][k] = sum_{x_T, x_S : h(f(..), phi_k) = o'} p(x_T) g(w, x_T) p(x_S),
// accumulated exactly and converted to double once. Both the exact and the
// smoothed objectives (and the analytic gradient) evaluate on this.
class ObjectiveEvaluator {
 public:
  explicit ObjectiveEvaluator(const OptProblem& p);

  std::size_t support_size() const { return support_.size(); }
  const std::vector<Value>& support() const { return support_; }
  std::size_t n_guesses() const { return n_guesses_; }
  std::size_t n_outputs() const { return n_outputs_; }  // |D_O'|
  double beta() const { return beta_; }

  // Unsmoothed objective at the given order (infinity, finite != 1, or 1).
  double exact_value(std::span<const double> pi,
                     const EntropyOrder& order) const;

  // Smoothed objective (finite alpha > 1, offset delta > 0); the gradient
  // variant writes d(obj)/d(pi_k).
  double smoothed_value(std::span<const double> pi, double alpha,
                        double delta) const;
  double smoothed_value_grad(std::span<const double> pi, double alpha,
                             double delta, std::span<double> grad) const;

  // Order-1 objective (mu form; requires a unitary gain) and its gradient
  // with the interior floor on conditional masses.
  double shannon_value(std::span<const double> pi) const;
  double shannon_value_grad(std::span<const double> pi,
                            std::span<double> grad) const;

 private:
  struct AttackerBlock {
    double weight;                  // p(x_A)
    std::size_t n_rows;             // reachable outputs for this x_A
    std::vector<double> coeff;      // n_rows x n_guesses x K, row-major
  };

  std::vector<Value> support_;
  std::size_t n_guesses_;
  std::size_t n_outputs_;
  double beta_;
  std::vector<AttackerBlock> blocks_;
};

// Objective seen by the local solver: value and gradient on the simplex.
class SimplexObjective {
 public:
  virtual ~SimplexObjective() = default;
  virtual double value(std::span<const double> pi) const = 0;
  virtual double value_grad(std::span<const double> pi,
                            std::span<double> grad) const = 0;
};

struct LocalResult {
  std::vector<double> pi;
  double value = 0.0;
  int iterations = 0;
  double pg_norm = 0.0;
  bool converged = false;
  std::vector<double> trace;  // objective at start and after each accepted step
};

// Projected gradient ascent with Armijo backtracking along the projection
// arc. Returns the best iterate; value never drops below the start's.
LocalResult maximize_on_simplex(const SimplexObjective& objective,
                                std::span<const double> start,
                                const SolverKnobs& knobs);

// Local solve of the smoothed problem from one start.
LocalResult solve_local(const ObjectiveEvaluator& evaluator, double alpha,
                        double delta, std::span<const double> start,
                        const SolverKnobs& knobs);

struct Certificate {
  double epsilon = 0.0;
  double delta_used = 0.0;     // smoothing offset (0 for the order-1 path)
  double alpha_used = 0.0;     // effective finite order (1 for order-1)
  double omega_lo = 0.0;       // bracket for the optimal objective value
  double omega_hi = 0.0;
  // The accuracy chain of the smoothing theorems assumes the located basin
  // is global; basin-hopping is a heuristic, so the bracket is conditional
  // on that.
  std::string assumption;
};

struct Diagnostics {
  int starts = 0;              // local solves run (starts + hops)
  int best_start = -1;
  long long iterations = 0;    // summed over local solves
  double grad_norm = 0.0;      // projected-gradient norm at the solution
  bool converged = false;
};

struct OptResult {
  DiscreteDist pi_phi = point_mass(Value{0});
  double objective_value = 0.0;
  Certificate certificate;
  Diagnostics diagnostics;
};

// Full pipeline: picks the effective finite order and smoothing offset for
// the requested order and accuracy, basin-hops the smoothed problem, and
// reports the exact objective of the winner at the requested order.
OptResult solve(const OptProblem& p);

struct SweepRow {
  double alpha;
  double omega_bar;    // ((alpha-1)/alpha) * objective of the order-alpha solve
  double theta_bound;  // (1/alpha) * log2 |W|
};

// Solves the problem at each finite alpha > 1 and tabulates the rescaled
// optima that under-approximate the order-infinity optimum.
std::vector<SweepRow> convergence_diagnostics(const OptProblem& p,
                                              std::span<const double> alphas);

}  // namespace smcpriv
