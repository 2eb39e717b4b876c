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
//
// Shared test helpers: a brute-force oracle that materializes the full joint
// table with plain double arithmetic (independent of the library's exact
// enumeration path), and generators for random scenarios, priors, gains, and
// approximations.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "smcpriv/leakage.hpp"
#include "smcpriv/randomize.hpp"
#include "smcpriv/scenario.hpp"

namespace smcpriv::testutil {

inline bool close_abs(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

// ---------------------------------------------------------------------------
// Brute-force awae oracle (normalized-conditional route, Eq.-14 style):
// builds p(x_T, o | x_A) as a dense double table, normalizes per output, and
// evaluates the conditional entropy directly.

inline double oracle_entropy_of_conditionals(
    const std::vector<std::map<std::size_t, double>>& joint_by_output,
    const GainSpec& gain, const std::vector<std::size_t>& gain_cols,
    const EntropyOrder& order) {
  double v_total = 0.0;
  double h_total = 0.0;
  for (const auto& joint : joint_by_output) {
    double p_o = 0.0;
    for (const auto& [i, p] : joint) p_o += p;
    if (p_o <= 0.0) continue;
    std::vector<double> rewards(gain.num_guesses(), 0.0);
    for (const auto& [i, p] : joint) {
      for (std::size_t w = 0; w < gain.num_guesses(); ++w)
        rewards[w] += (p / p_o) * gain.gain_d(w, gain_cols[i]);
    }
    if (order.is_infinity()) {
      double best = 0.0;
      for (double r : rewards) best = std::max(best, r);
      v_total += p_o * best;
    } else if (order.is_one()) {
      double h = 0.0;
      for (double r : rewards) {
        if (r > 0.0) h -= r * std::log2(r);
      }
      h_total += p_o * h;
    } else {
      double s = 0.0;
      for (double r : rewards) s += std::pow(r, order.alpha());
      v_total += p_o * std::pow(s, 1.0 / order.alpha());
    }
  }
  if (order.is_one()) return h_total;
  if (order.is_infinity()) return -std::log2(v_total);
  return order.alpha() / (1.0 - order.alpha()) * std::log2(v_total);
}

// awae at one attacker input; pass approx/pi_phi to study the randomized
// computation instead of the plain one.
inline double oracle_awae(const ScenarioSpec& s, const Tuple& x_a,
                          const EntropyOrder& order,
                          const ApproximationSpec* approx = nullptr,
                          const DiscreteDist* pi_phi = nullptr) {
  std::map<std::string, Value> env;
  for (std::size_t i = 0; i < s.attackers.names.size(); ++i)
    env[s.attackers.names[i]] = x_a[i];

  const DiscreteDist& pi_t = s.targets.prior;
  const DiscreteDist& pi_s = s.spectators.prior;

  std::vector<std::size_t> gain_cols(pi_t.size());
  for (std::size_t i = 0; i < pi_t.size(); ++i)
    gain_cols[i] = s.gain.secret_index(pi_t.atom(i));

  std::map<Value, std::map<std::size_t, double>> joint;
  for (std::size_t i = 0; i < pi_t.size(); ++i) {
    for (std::size_t c = 0; c < s.targets.names.size(); ++c)
      env[s.targets.names[c]] = pi_t.atom(i)[c];
    for (std::size_t j = 0; j < pi_s.size(); ++j) {
      for (std::size_t c = 0; c < s.spectators.names.size(); ++c)
        env[s.spectators.names[c]] = pi_s.atom(j)[c];
      Value o = s.f.eval(env);
      double w = to_double(pi_t.prob(i)) * to_double(pi_s.prob(j));
      if (approx == nullptr) {
        joint[o][i] += w;
      } else {
        for (std::size_t k = 0; k < pi_phi->size(); ++k) {
          joint[approx->apply(o, pi_phi->atom(k)[0])][i] +=
              w * to_double(pi_phi->prob(k));
        }
      }
    }
  }
  std::vector<std::map<std::size_t, double>> by_output;
  by_output.reserve(joint.size());
  for (auto& [o, m] : joint) by_output.push_back(std::move(m));
  return oracle_entropy_of_conditionals(by_output, s.gain, gain_cols, order);
}

// Prior-weighted average of the randomized oracle over supp(pi_A).
inline double oracle_objective(const ScenarioSpec& s,
                               const ApproximationSpec& approx,
                               const DiscreteDist& pi_phi,
                               const EntropyOrder& order) {
  const DiscreteDist& pi_a = s.attackers.prior;
  double total = 0.0;
  for (std::size_t i = 0; i < pi_a.size(); ++i)
    total += to_double(pi_a.prob(i)) *
             oracle_awae(s, pi_a.atom(i), order, &approx, &pi_phi);
  return total;
}

// ---------------------------------------------------------------------------
// Random instance generators. All take the RNG by reference so suites stay
// reproducible under fixed seeds.

inline VarDomain random_domain(std::mt19937_64& rng, int max_size = 4) {
  std::uniform_int_distribution<int> size_dist(1, max_size);
  std::uniform_int_distribution<Value> value_dist(-4, 6);
  int size = size_dist(rng);
  std::vector<Value> values;
  while (static_cast<int>(values.size()) < size) {
    Value v = value_dist(rng);
    if (std::find(values.begin(), values.end(), v) == values.end())
      values.push_back(v);
  }
  return VarDomain::explicit_set(std::move(values));
}

// Random rational prior over a domain; some atoms may get zero mass, which
// exercises supports strictly inside the declared domain.
inline DiscreteDist random_prior(std::mt19937_64& rng,
                                 const DomainSpec& domains) {
  std::vector<Tuple> tuples = enumerate_domain(domains);
  std::uniform_int_distribution<int> num_dist(0, 8);
  std::vector<Rational> weights(tuples.size());
  Rational total(0);
  for (Rational& w : weights) {
    w = num_dist(rng);
    total += w;
  }
  if (total == 0) weights[0] = total = 1;
  for (Rational& w : weights) w /= total;
  return DiscreteDist::from_weights(std::move(tuples), std::move(weights));
}

inline GainSpec random_gain(std::mt19937_64& rng,
                            const DomainSpec& target_domains, bool unitary) {
  std::vector<Tuple> secrets = enumerate_domain(target_domains);
  std::uniform_int_distribution<int> guesses_dist(unitary ? 2 : 1, 4);
  std::uniform_int_distribution<int> entry_dist(0, 8);
  std::size_t n_w = static_cast<std::size_t>(guesses_dist(rng));
  std::vector<std::vector<Rational>> matrix(
      n_w, std::vector<Rational>(secrets.size()));
  for (std::size_t x = 0; x < secrets.size(); ++x) {
    Rational col(0);
    for (std::size_t w = 0; w < n_w; ++w) {
      matrix[w][x] = Rational(entry_dist(rng), 8);
      col += matrix[w][x];
    }
    if (col == 0) {
      matrix[0][x] = Rational(1, 2);
      col = matrix[0][x];
    }
    if (unitary) {
      for (std::size_t w = 0; w < n_w; ++w) matrix[w][x] /= col;
    }
  }
  std::vector<std::string> labels;
  for (std::size_t w = 0; w < n_w; ++w)
    labels.push_back("w" + std::to_string(w));
  return GainSpec::explicit_matrix(std::move(labels), std::move(secrets),
                                   std::move(matrix));
}

// Random arithmetic expression over the given variables.
inline Expr random_expr(std::mt19937_64& rng,
                        const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> leaf_dist(0, 3);
  std::uniform_int_distribution<int> const_dist(-3, 3);
  std::uniform_int_distribution<std::size_t> var_dist(0, vars.size() - 1);
  std::uniform_int_distribution<int> op_dist(0, 3);
  if (depth <= 0 || leaf_dist(rng) == 0) {
    if (!vars.empty() && leaf_dist(rng) != 1)
      return Expr::var(vars[var_dist(rng)]);
    return Expr::literal(const_dist(rng));
  }
  switch (op_dist(rng)) {
    case 0:
      return Expr::add(random_expr(rng, vars, depth - 1),
                       random_expr(rng, vars, depth - 1));
    case 1:
      return Expr::sub(random_expr(rng, vars, depth - 1),
                       random_expr(rng, vars, depth - 1));
    case 2:
      return Expr::mul(random_expr(rng, vars, depth - 1),
                       random_expr(rng, vars, depth - 1));
    default:
      return Expr::neg(random_expr(rng, vars, depth - 1));
  }
}

// Random small scenario: scalar attacker and spectator, scalar target (or,
// occasionally, a pair of tiny target variables), random priors and gain.
inline ScenarioSpec random_scenario(std::mt19937_64& rng, bool unitary_gain,
                                    int max_dom = 4) {
  ScenarioSpec s;
  std::uniform_int_distribution<int> pct(0, 99);

  s.attackers.names = {"a"};
  s.attackers.domains = {random_domain(rng, max_dom)};
  s.attackers.prior = random_prior(rng, s.attackers.domains);

  if (pct(rng) < 15 && max_dom >= 4) {
    s.targets.names = {"t", "u"};
    s.targets.domains = {random_domain(rng, 2), random_domain(rng, 2)};
  } else {
    s.targets.names = {"t"};
    s.targets.domains = {random_domain(rng, max_dom)};
  }
  s.targets.prior = random_prior(rng, s.targets.domains);

  if (pct(rng) < 20) {
    s.spectators = PartyGroup{};  // empty spectator set
  } else {
    s.spectators.names = {"z"};
    s.spectators.domains = {random_domain(rng, max_dom)};
    s.spectators.prior = random_prior(rng, s.spectators.domains);
  }

  std::vector<std::string> vars = s.attackers.names;
  vars.insert(vars.end(), s.targets.names.begin(), s.targets.names.end());
  vars.insert(vars.end(), s.spectators.names.begin(),
              s.spectators.names.end());
  s.f = random_expr(rng, vars, 3);
  s.gain = random_gain(rng, s.targets.domains, unitary_gain);
  s.order = EntropyOrder::infinity();
  return s;
}

inline DiscreteDist random_pi_phi(std::mt19937_64& rng,
                                  const VarDomain& phi_domain,
                                  int max_support = 5) {
  const auto& values = phi_domain.values();
  std::uniform_int_distribution<int> size_dist(
      1, std::min<int>(max_support, static_cast<int>(values.size())));
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::uniform_int_distribution<int> num_dist(1, 8);
  int size = size_dist(rng);
  std::map<Value, Rational> masses;
  while (static_cast<int>(masses.size()) < size)
    masses.emplace(values[pick(rng)], 0);
  Rational total(0);
  for (auto& [v, w] : masses) {
    w = num_dist(rng);
    total += w;
  }
  std::vector<Tuple> support;
  std::vector<Rational> weights;
  for (auto& [v, w] : masses) {
    support.push_back(Tuple{v});
    weights.push_back(w / total);
  }
  return DiscreteDist::from_weights(std::move(support), std::move(weights));
}

// Random approximation: mostly additive, otherwise a mapped h drawn from a
// small family mixing close and non-close maps.
inline ApproximationSpec random_approximation(std::mt19937_64& rng,
                                              bool force_mapped = false) {
  VarDomain phi_domain = VarDomain::interval(-3, 3);
  std::uniform_int_distribution<int> pick(0, 6);
  int choice = force_mapped ? std::uniform_int_distribution<int>(1, 6)(rng)
                            : pick(rng);
  switch (choice) {
    case 0:
      return ApproximationSpec::additive("phi", phi_domain);
    case 1:  // close: shifted copy of o
      return ApproximationSpec::mapped(parse_expr("o"), "phi", phi_domain);
    case 2:  // close: scaled with phi offset
      return ApproximationSpec::mapped(parse_expr("2*o+phi"), "phi",
                                       phi_domain);
    case 3:  // close
      return ApproximationSpec::mapped(parse_expr("3*o-phi"), "phi",
                                       phi_domain);
    case 4:  // not close: constant map
      return ApproximationSpec::mapped(parse_expr("0"), "phi", phi_domain);
    case 5:  // not close: drops o entirely
      return ApproximationSpec::mapped(parse_expr("phi"), "phi", phi_domain);
    default:  // usually not close on signed output domains
      return ApproximationSpec::mapped(parse_expr("o*o+phi"), "phi",
                                       phi_domain);
  }
}

}  // namespace smcpriv::testutil
