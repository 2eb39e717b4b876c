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

#include "smcpriv/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace smcpriv {

namespace {

constexpr double kLn2 = 0.6931471805599453;

std::string fresh_virtual_name(const ScenarioSpec& s) {
  std::set<std::string> taken;
  for (const PartyGroup* g : {&s.attackers, &s.targets, &s.spectators})
    taken.insert(g->names.begin(), g->names.end());
  std::string name = "phi";
  while (taken.count(name) || name == "o") name += '_';
  return name;
}

}  // namespace

ApproximationSpec OptProblem::approximation() const {
  return ApproximationSpec::additive(
      fresh_virtual_name(scenario),
      VarDomain::explicit_set(phi_support));
}

void OptProblem::validate() const {
  scenario.validate();
  if (phi_support.empty()) throw Error("empty virtual input support");
  if (!std::is_sorted(phi_support.begin(), phi_support.end()) ||
      std::adjacent_find(phi_support.begin(), phi_support.end()) !=
          phi_support.end())
    throw Error("virtual input support must be sorted and distinct");
  if (!(epsilon > 0.0)) throw Error("accuracy epsilon must be positive");
  if (order.is_one() && !scenario.gain.is_unitary())
    throw Error("order-1 optimization requires a unitary gain function");
  if (order.is_finite() && order.alpha() < 1.0)
    throw Error("the optimizer covers orders alpha >= 1 and infinity only");
  if (knobs.n_starts < 0 || knobs.n_hops < 0 || knobs.max_iterations < 1)
    throw Error("invalid solver knobs");

  if (!scenario.allow_bigint) {
    // The randomized output o + phi must stay within 64 bits as well.
    std::map<std::string, Expr::Interval> bounds;
    for (auto& [name, iv] : scenario_bounds(scenario)) bounds[name] = iv;
    Expr::Interval iv = scenario.f.interval(bounds);
    const BigInt lo = std::numeric_limits<Value>::min();
    const BigInt hi = std::numeric_limits<Value>::max();
    if (iv.lo + phi_support.front() < lo || iv.hi + phi_support.back() > hi)
      throw Error(
          "randomized outputs may overflow 64-bit integers; enable the "
          "big-integer fallback");
  }
}

OptProblem make_problem(const ScenarioSpec& s, Value delta_max,
                        double epsilon, SolverKnobs knobs) {
  if (delta_max < 1)
    throw Error("distortion bound must be a positive integer");
  std::vector<Value> support;
  for (Value v = -delta_max; v <= delta_max; ++v) support.push_back(v);
  return make_problem_with_support(s, std::move(support), epsilon,
                                   std::move(knobs));
}

OptProblem make_problem_with_support(const ScenarioSpec& s,
                                     std::vector<Value> support,
                                     double epsilon, SolverKnobs knobs) {
  OptProblem p;
  p.scenario = s;
  p.phi_support = std::move(support);
  std::sort(p.phi_support.begin(), p.phi_support.end());
  p.order = s.order;
  p.epsilon = epsilon;
  p.knobs = std::move(knobs);
  p.validate();
  return p;
}

double delta_for_accuracy(double epsilon, double alpha, double beta,
                          std::size_t n_outputs, std::size_t n_guesses) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (!(alpha > 1.0)) throw Error("smoothing requires alpha > 1");
  if (!(beta > 0.0)) throw Error("beta must be positive");
  return (1.0 - 1.0 / alpha) * epsilon * beta * kLn2 /
         (static_cast<double>(n_outputs) * static_cast<double>(n_guesses));
}

double alpha_for_accuracy(double epsilon, std::size_t n_guesses) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  double alpha = (2.0 / epsilon) * std::log2(static_cast<double>(n_guesses));
  return std::max(2.0, alpha);
}

double objective(const OptProblem& p, const DiscreteDist& pi_phi,
                 const LeakageOptions& opts) {
  for (const Tuple& t : pi_phi.support()) {
    if (!std::binary_search(p.phi_support.begin(), p.phi_support.end(), t[0]))
      throw Error("pi_phi mass at " + tuple_to_string(t) +
                  " violates the distortion window");
  }
  ScenarioSpec at_order = p.scenario;
  at_order.order = p.order;
  LeakageProfile profile =
      awae_randomized(at_order, p.approximation(), pi_phi, opts);
  const DiscreteDist& prior = p.scenario.attackers.prior;
  KahanSum total;
  for (std::size_t i = 0; i < prior.size(); ++i)
    total.add(to_double(prior.prob(i)) * profile.at(prior.atom(i)));
  return total.value();
}

// ---------------------------------------------------------------------------
// ObjectiveEvaluator

ObjectiveEvaluator::ObjectiveEvaluator(const OptProblem& p) {
  p.validate();
  support_ = p.phi_support;
  const ScenarioSpec& s = p.scenario;
  n_guesses_ = s.gain.num_guesses();
  beta_ = s.gain.beta_d();

  ApproximationSpec approx = p.approximation();
  n_outputs_ = randomized_output_domain_big(s, approx).size();

  std::vector<std::size_t> gain_cols(s.targets.prior.size());
  for (std::size_t i = 0; i < s.targets.prior.size(); ++i)
    gain_cols[i] = s.gain.secret_index(s.targets.prior.atom(i));

  const DiscreteDist& pi_a = s.attackers.prior;
  const DiscreteDist& pi_t = s.targets.prior;
  const DiscreteDist& pi_s = s.spectators.prior;
  const std::size_t K = support_.size();
  const bool use_big = s.allow_bigint && !s.fits_int64();

  for (std::size_t a = 0; a < pi_a.size(); ++a) {
    AttackerBlock block;
    block.weight = to_double(pi_a.prob(a));

    auto accumulate = [&](auto key_tag) {
      using IntT = decltype(key_tag);
      std::map<std::string, IntT> env;
      for (std::size_t i = 0; i < s.attackers.names.size(); ++i)
        env[s.attackers.names[i]] = IntT(pi_a.atom(a)[i]);
      for (const std::string& n : s.targets.names) env[n] = IntT(0);
      for (const std::string& n : s.spectators.names) env[n] = IntT(0);

      // o' -> per (target index, k) rest mass, exact.
      std::map<IntT, std::vector<Rational>> acc;
      for (std::size_t i = 0; i < pi_t.size(); ++i) {
        for (std::size_t c = 0; c < s.targets.names.size(); ++c)
          env[s.targets.names[c]] = IntT(pi_t.atom(i)[c]);
        for (std::size_t j = 0; j < pi_s.size(); ++j) {
          for (std::size_t c = 0; c < s.spectators.names.size(); ++c)
            env[s.spectators.names[c]] = IntT(pi_s.atom(j)[c]);
          IntT o;
          if constexpr (std::is_same_v<IntT, Value>) {
            o = s.f.eval(env);
          } else {
            o = s.f.eval_big(env);
          }
          for (std::size_t k = 0; k < K; ++k) {
            IntT o_prime;
            if constexpr (std::is_same_v<IntT, Value>) {
              o_prime = approx.apply(o, support_[k]);
            } else {
              o_prime = approx.apply_big(o, support_[k]);
            }
            auto& fiber =
                acc.try_emplace(std::move(o_prime), pi_t.size() * K).first
                    ->second;
            fiber[i * K + k] += pi_s.prob(j);
          }
        }
      }

      block.n_rows = acc.size();
      block.coeff.assign(acc.size() * n_guesses_ * K, 0.0);
      std::size_t row = 0;
      for (const auto& [o_prime, fiber] : acc) {
        for (std::size_t w = 0; w < n_guesses_; ++w) {
          for (std::size_t k = 0; k < K; ++k) {
            Rational c(0);
            for (std::size_t i = 0; i < pi_t.size(); ++i) {
              const Rational& rest = fiber[i * K + k];
              if (rest != 0)
                c += pi_t.prob(i) * rest * s.gain.gain(w, gain_cols[i]);
            }
            block.coeff[(row * n_guesses_ + w) * K + k] = to_double(c);
          }
        }
        ++row;
      }
    };

    if (use_big) {
      accumulate(BigInt(0));
    } else {
      accumulate(Value(0));
    }
    blocks_.push_back(std::move(block));
  }
}

double ObjectiveEvaluator::exact_value(std::span<const double> pi,
                                       const EntropyOrder& order) const {
  if (pi.size() != support_.size())
    throw Error("pi_phi length must match the support");
  if (order.is_one()) return shannon_value(pi);

  const std::size_t K = support_.size();
  KahanSum obj;
  std::vector<double> v(n_guesses_);
  for (const AttackerBlock& b : blocks_) {
    KahanSum vsum;
    for (std::size_t row = 0; row < b.n_rows; ++row) {
      for (std::size_t w = 0; w < n_guesses_; ++w) {
        const double* c = &b.coeff[(row * n_guesses_ + w) * K];
        double acc = 0.0;
        for (std::size_t k = 0; k < K; ++k) acc += c[k] * pi[k];
        v[w] = acc;
      }
      vsum.add(order.is_infinity() ? max_norm<double>(v)
                                   : alpha_norm(v, order.alpha()));
    }
    double awae_value;
    if (order.is_infinity()) {
      awae_value = -std::log2(vsum.value());
    } else {
      double a = order.alpha();
      awae_value = a / (1.0 - a) * std::log2(vsum.value());
    }
    obj.add(b.weight * awae_value);
  }
  return obj.value();
}

double ObjectiveEvaluator::smoothed_value(std::span<const double> pi,
                                          double alpha, double delta) const {
  if (pi.size() != support_.size())
    throw Error("pi_phi length must match the support");
  if (!(alpha > 1.0) || !(delta > 0.0))
    throw Error("smoothed objective requires alpha > 1 and delta > 0");

  const std::size_t K = support_.size();
  const double offset_norm =
      delta * std::pow(static_cast<double>(n_guesses_), 1.0 / alpha);
  KahanSum obj;
  std::vector<double> v(n_guesses_);
  for (const AttackerBlock& b : blocks_) {
    KahanSum vsum;
    for (std::size_t row = 0; row < b.n_rows; ++row) {
      for (std::size_t w = 0; w < n_guesses_; ++w) {
        const double* c = &b.coeff[(row * n_guesses_ + w) * K];
        double acc = delta;
        for (std::size_t k = 0; k < K; ++k) acc += c[k] * pi[k];
        v[w] = acc;
      }
      vsum.add(alpha_norm(v, alpha));
    }
    // Outputs unreachable for this attacker input still carry the offset
    // vector inside the sum over D_O'.
    vsum.add(static_cast<double>(n_outputs_ - b.n_rows) * offset_norm);
    obj.add(b.weight * (alpha / (1.0 - alpha)) * std::log2(vsum.value()));
  }
  return obj.value();
}

double ObjectiveEvaluator::smoothed_value_grad(std::span<const double> pi,
                                               double alpha, double delta,
                                               std::span<double> grad) const {
  if (pi.size() != support_.size() || grad.size() != support_.size())
    throw Error("pi_phi/gradient length must match the support");
  if (!(alpha > 1.0) || !(delta > 0.0))
    throw Error("smoothed objective requires alpha > 1 and delta > 0");

  const std::size_t K = support_.size();
  const double offset_norm =
      delta * std::pow(static_cast<double>(n_guesses_), 1.0 / alpha);
  std::fill(grad.begin(), grad.end(), 0.0);
  KahanSum obj;
  std::vector<double> v(n_guesses_);
  std::vector<double> dv(K);
  for (const AttackerBlock& b : blocks_) {
    KahanSum vsum;
    std::fill(dv.begin(), dv.end(), 0.0);
    for (std::size_t row = 0; row < b.n_rows; ++row) {
      for (std::size_t w = 0; w < n_guesses_; ++w) {
        const double* c = &b.coeff[(row * n_guesses_ + w) * K];
        double acc = delta;
        for (std::size_t k = 0; k < K; ++k) acc += c[k] * pi[k];
        v[w] = acc;
      }
      double norm = alpha_norm(v, alpha);
      vsum.add(norm);
      // d||v||/dv_w = (v_w / ||v||)^(alpha-1)
      for (std::size_t w = 0; w < n_guesses_; ++w) {
        double factor = std::pow(v[w] / norm, alpha - 1.0);
        if (factor == 0.0) continue;
        const double* c = &b.coeff[(row * n_guesses_ + w) * K];
        for (std::size_t k = 0; k < K; ++k) dv[k] += factor * c[k];
      }
    }
    vsum.add(static_cast<double>(n_outputs_ - b.n_rows) * offset_norm);
    double vtotal = vsum.value();
    obj.add(b.weight * (alpha / (1.0 - alpha)) * std::log2(vtotal));
    double scale = b.weight * (alpha / (1.0 - alpha)) / (vtotal * kLn2);
    for (std::size_t k = 0; k < K; ++k) grad[k] += scale * dv[k];
  }
  return obj.value();
}

double ObjectiveEvaluator::shannon_value(std::span<const double> pi) const {
  if (pi.size() != support_.size())
    throw Error("pi_phi length must match the support");
  const std::size_t K = support_.size();
  KahanSum obj;
  std::vector<double> v(n_guesses_);
  for (const AttackerBlock& b : blocks_) {
    KahanSum h;
    for (std::size_t row = 0; row < b.n_rows; ++row) {
      double p_o = 0.0;
      for (std::size_t w = 0; w < n_guesses_; ++w) {
        const double* c = &b.coeff[(row * n_guesses_ + w) * K];
        double acc = 0.0;
        for (std::size_t k = 0; k < K; ++k) acc += c[k] * pi[k];
        v[w] = acc;
        p_o += acc;  // unitary gain: sum of guess weights is p(o'|x_A)
      }
      if (p_o <= 0.0) continue;
      for (std::size_t w = 0; w < n_guesses_; ++w) {
        if (v[w] > 0.0) h.add(-v[w] * std::log2(v[w] / p_o));
      }
    }
    obj.add(b.weight * h.value());
  }
  return obj.value();
}

double ObjectiveEvaluator::shannon_value_grad(std::span<const double> pi,
                                              std::span<double> grad) const {
  if (pi.size() != support_.size() || grad.size() != support_.size())
    throw Error("pi_phi/gradient length must match the support");
  const std::size_t K = support_.size();
  std::fill(grad.begin(), grad.end(), 0.0);
  KahanSum obj;
  std::vector<double> v(n_guesses_);
  for (const AttackerBlock& b : blocks_) {
    KahanSum h;
    for (std::size_t row = 0; row < b.n_rows; ++row) {
      double p_o = 0.0;
      for (std::size_t w = 0; w < n_guesses_; ++w) {
        const double* c = &b.coeff[(row * n_guesses_ + w) * K];
        double acc = 0.0;
        for (std::size_t k = 0; k < K; ++k) acc += c[k] * pi[k];
        v[w] = acc;
        p_o += acc;
      }
      if (p_o <= 0.0) continue;
      for (std::size_t w = 0; w < n_guesses_; ++w) {
        if (v[w] > 0.0) h.add(-v[w] * std::log2(v[w] / p_o));
        // d/dpi_k of sum_w -v_w log2(v_w / p_o) with the conditional mass
        // floored away from 0.
        double cond = std::max(v[w] / p_o, 1e-12);
        double term = -std::log2(cond);
        const double* c = &b.coeff[(row * n_guesses_ + w) * K];
        for (std::size_t k = 0; k < K; ++k)
          grad[k] += b.weight * c[k] * term;
      }
    }
    obj.add(b.weight * h.value());
  }
  return obj.value();
}

// ---------------------------------------------------------------------------
// Simplex machinery

std::vector<double> project_to_simplex(std::span<const double> v) {
  if (v.empty()) throw Error("cannot project an empty vector");
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0;
  double tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double candidate = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    x[i] = std::max(v[i] - tau, 0.0);
  return x;
}

LocalResult maximize_on_simplex(const SimplexObjective& objective,
                                std::span<const double> start,
                                const SolverKnobs& knobs) {
  const std::size_t n = start.size();
  LocalResult result;
  result.pi = project_to_simplex(start);
  std::vector<double> grad(n);
  result.value = objective.value_grad(result.pi, grad);
  result.trace.push_back(result.value);

  double step = 1.0;
  std::vector<double> probe(n), candidate(n);
  for (int it = 0; it < knobs.max_iterations; ++it) {
    result.iterations = it;
    for (std::size_t i = 0; i < n; ++i) probe[i] = result.pi[i] + grad[i];
    probe = project_to_simplex(probe);
    double pg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = probe[i] - result.pi[i];
      pg += d * d;
    }
    result.pg_norm = std::sqrt(pg);
    if (result.pg_norm <= knobs.pg_tolerance) {
      result.converged = true;
      break;
    }

    // Armijo backtracking along the projection arc.
    bool accepted = false;
    double t = std::clamp(step * 4.0, 1e-10, 1e8);
    for (int back = 0; back < 80 && !accepted; ++back) {
      for (std::size_t i = 0; i < n; ++i)
        candidate[i] = result.pi[i] + t * grad[i];
      candidate = project_to_simplex(candidate);
      double ascent = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        ascent += grad[i] * (candidate[i] - result.pi[i]);
      if (ascent > 0.0) {
        double fc = objective.value(candidate);
        if (fc >= result.value + 1e-4 * ascent) {
          result.pi = candidate;
          result.value = fc;
          result.trace.push_back(fc);
          step = t;
          accepted = true;
        }
      }
      t *= 0.5;
    }
    if (!accepted) break;  // stalled; report the best iterate found
    result.value = objective.value_grad(result.pi, grad);
  }
  return result;
}

namespace {

class SmoothedAdapter final : public SimplexObjective {
 public:
  SmoothedAdapter(const ObjectiveEvaluator& ev, double alpha, double delta)
      : ev_(ev), alpha_(alpha), delta_(delta) {}
  double value(std::span<const double> pi) const override {
    return ev_.smoothed_value(pi, alpha_, delta_);
  }
  double value_grad(std::span<const double> pi,
                    std::span<double> grad) const override {
    return ev_.smoothed_value_grad(pi, alpha_, delta_, grad);
  }

 private:
  const ObjectiveEvaluator& ev_;
  double alpha_;
  double delta_;
};

class ShannonAdapter final : public SimplexObjective {
 public:
  explicit ShannonAdapter(const ObjectiveEvaluator& ev) : ev_(ev) {}
  double value(std::span<const double> pi) const override {
    return ev_.shannon_value(pi);
  }
  double value_grad(std::span<const double> pi,
                    std::span<double> grad) const override {
    return ev_.shannon_value_grad(pi, grad);
  }

 private:
  const ObjectiveEvaluator& ev_;
};

std::vector<double> dirichlet_draw(std::mt19937_64& rng, std::size_t k,
                                   double concentration) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> x(k);
  double sum = 0.0;
  for (double& xi : x) {
    xi = gamma(rng);
    sum += xi;
  }
  if (sum <= 0.0) return std::vector<double>(k, 1.0 / static_cast<double>(k));
  for (double& xi : x) xi /= sum;
  return x;
}

// Strictly-better comparison with the deterministic tie-break: higher value,
// then lexicographically smaller mass vector.
bool better(const LocalResult& a, const LocalResult& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.pi < b.pi;
}

}  // namespace

LocalResult solve_local(const ObjectiveEvaluator& evaluator, double alpha,
                        double delta, std::span<const double> start,
                        const SolverKnobs& knobs) {
  SmoothedAdapter adapter(evaluator, alpha, delta);
  return maximize_on_simplex(adapter, start, knobs);
}

OptResult solve(const OptProblem& p) {
  p.validate();
  ObjectiveEvaluator evaluator(p);
  const std::size_t K = evaluator.support_size();

  double alpha_eff = 0.0;
  double delta_used = 0.0;
  bool shannon_mode = false;
  if (p.order.is_infinity()) {
    alpha_eff = alpha_for_accuracy(p.epsilon, evaluator.n_guesses());
    double eps_inner = alpha_eff / (alpha_eff - 1.0) * (p.epsilon / 2.0);
    delta_used = delta_for_accuracy(eps_inner, alpha_eff, evaluator.beta(),
                                    evaluator.n_outputs(),
                                    evaluator.n_guesses());
  } else if (p.order.is_one()) {
    shannon_mode = true;
    alpha_eff = 1.0;
  } else {
    alpha_eff = p.order.alpha();
    delta_used = delta_for_accuracy(p.epsilon, alpha_eff, evaluator.beta(),
                                    evaluator.n_outputs(),
                                    evaluator.n_guesses());
  }

  SmoothedAdapter smoothed(evaluator, alpha_eff > 1.0 ? alpha_eff : 2.0,
                           delta_used > 0.0 ? delta_used : 1e-12);
  ShannonAdapter shannon(evaluator);
  const SimplexObjective& objective_fn =
      shannon_mode ? static_cast<const SimplexObjective&>(shannon)
                   : static_cast<const SimplexObjective&>(smoothed);

  // Deterministic anchors plus Dirichlet starts, all drawn up front so the
  // result depends only on the seed.
  std::mt19937_64 rng(p.knobs.seed);
  std::vector<std::vector<double>> starts;
  starts.emplace_back(K, 1.0 / static_cast<double>(K));
  auto zero_it =
      std::find(p.phi_support.begin(), p.phi_support.end(), Value{0});
  if (zero_it != p.phi_support.end()) {
    std::vector<double> point(K, 0.0);
    point[static_cast<std::size_t>(zero_it - p.phi_support.begin())] = 1.0;
    starts.push_back(std::move(point));
  }
  for (int i = 0; i < p.knobs.n_starts; ++i)
    starts.push_back(
        dirichlet_draw(rng, K, p.knobs.dirichlet_concentration));

  std::vector<LocalResult> results(starts.size());
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      results[i] = maximize_on_simplex(objective_fn, starts[i], p.knobs);
  };
  unsigned n_threads = p.knobs.threads != 0
                           ? p.knobs.threads
                           : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, starts.size()));
  if (n_threads <= 1) {
    run_range(0, starts.size());
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(n_threads);
    std::size_t chunk = (starts.size() + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(starts.size(), begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (better(results[i], results[best])) best = i;
  }

  // Basin hops: perturb the incumbent with a fresh Dirichlet mixture.
  long long total_iterations = 0;
  for (const LocalResult& r : results) total_iterations += r.iterations;
  int runs = static_cast<int>(results.size());
  for (int hop = 0; hop < p.knobs.n_hops; ++hop) {
    std::vector<double> direction =
        dirichlet_draw(rng, K, p.knobs.dirichlet_concentration);
    std::vector<double> start(K);
    for (std::size_t i = 0; i < K; ++i)
      start[i] = (1.0 - p.knobs.hop_mix_weight) * results[best].pi[i] +
                 p.knobs.hop_mix_weight * direction[i];
    LocalResult hop_result =
        maximize_on_simplex(objective_fn, start, p.knobs);
    total_iterations += hop_result.iterations;
    ++runs;
    if (better(hop_result, results[best])) {
      results.push_back(std::move(hop_result));
      best = results.size() - 1;
    }
  }

  // Clean the winner: clip stray negatives (projection already keeps masses
  // >= 0) and renormalize.
  std::vector<double> masses = results[best].pi;
  double total = 0.0;
  for (double& m : masses) {
    if (m < 0.0) m = 0.0;
    total += m;
  }
  if (total <= 0.0) throw Error("solver produced an empty distribution");
  for (double& m : masses) m /= total;

  std::vector<Tuple> support;
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < K; ++i) {
    support.push_back(Tuple{p.phi_support[i]});
    weights.push_back(Rational(masses[i]));
  }

  OptResult out;
  out.pi_phi = DiscreteDist::from_weights(std::move(support),
                                          std::move(weights));
  out.objective_value = objective(p, out.pi_phi);
  out.certificate.epsilon = p.epsilon;
  out.certificate.delta_used = delta_used;
  out.certificate.alpha_used = alpha_eff;
  out.certificate.omega_lo = out.objective_value;
  out.certificate.omega_hi = out.objective_value + p.epsilon;
  out.certificate.assumption =
      "bracket assumes basin-hopping located the global basin of the "
      "smoothed problem";
  out.diagnostics.starts = runs;
  out.diagnostics.best_start = static_cast<int>(best);
  out.diagnostics.iterations = total_iterations;
  out.diagnostics.grad_norm = results[best].pg_norm;
  out.diagnostics.converged = results[best].converged;
  return out;
}

std::vector<SweepRow> convergence_diagnostics(const OptProblem& p,
                                              std::span<const double> alphas) {
  std::vector<SweepRow> rows;
  for (double alpha : alphas) {
    if (!(alpha > 1.0))
      throw Error("convergence diagnostics require finite alpha > 1");
    OptProblem at_alpha = p;
    at_alpha.order = EntropyOrder::finite(alpha);
    OptResult r = solve(at_alpha);
    SweepRow row;
    row.alpha = alpha;
    row.omega_bar = (alpha - 1.0) / alpha * r.objective_value;
    row.theta_bound =
        std::log2(static_cast<double>(p.scenario.gain.num_guesses())) / alpha;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace smcpriv
