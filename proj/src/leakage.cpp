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

#include "smcpriv/leakage.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

namespace smcpriv {

namespace {

// Mutable variable bindings with stable slots, so inner enumeration loops
// update values without rebuilding the map.
template <typename IntT>
class EnvSlots {
 public:
  using Env = std::map<std::string, IntT>;

  std::vector<typename Env::iterator> bind(
      const std::vector<std::string>& names) {
    std::vector<typename Env::iterator> slots;
    slots.reserve(names.size());
    for (const std::string& n : names)
      slots.push_back(env_.insert_or_assign(n, IntT(0)).first);
    return slots;
  }

  void set(std::vector<typename Env::iterator>& slots, const Tuple& values) {
    for (std::size_t i = 0; i < slots.size(); ++i)
      slots[i]->second = IntT(values[i]);
  }

  const Env& env() const { return env_; }

 private:
  Env env_;
};

std::int64_t eval_as(const Expr& f, const std::map<std::string, Value>& env) {
  return f.eval(env);
}
BigInt eval_as(const Expr& f, const std::map<std::string, BigInt>& env) {
  return f.eval_big(env);
}

template <typename IntT>
IntT apply_approx(const ApproximationSpec& approx, const IntT& o, Value phi);

template <>
Value apply_approx<Value>(const ApproximationSpec& approx, const Value& o,
                          Value phi) {
  return approx.apply(o, phi);
}
template <>
BigInt apply_approx<BigInt>(const ApproximationSpec& approx, const BigInt& o,
                            Value phi) {
  return approx.apply_big(o, phi);
}

// Per-output accumulator for one attacker input: for each achievable output
// key, the vector over target-support indices of the summed rest-mass
// sum_{x_S[, phi] -> o} p(x_S) [p(phi)]. Exact rationals; ordered keys keep
// the float conversion order reproducible.
template <typename IntT>
using Fibers = std::map<IntT, std::vector<Rational>>;

template <typename IntT>
Fibers<IntT> accumulate_fibers(const ScenarioSpec& s, const Tuple& x_a,
                               const ApproximationSpec* approx,
                               const DiscreteDist* pi_phi) {
  EnvSlots<IntT> slots;
  auto a_slots = slots.bind(s.attackers.names);
  auto t_slots = slots.bind(s.targets.names);
  auto s_slots = slots.bind(s.spectators.names);
  slots.set(a_slots, x_a);

  const DiscreteDist& pi_t = s.targets.prior;
  const DiscreteDist& pi_s = s.spectators.prior;

  Fibers<IntT> fibers;
  std::vector<Rational>* fiber = nullptr;
  for (std::size_t i = 0; i < pi_t.size(); ++i) {
    slots.set(t_slots, pi_t.atom(i));
    for (std::size_t j = 0; j < pi_s.size(); ++j) {
      slots.set(s_slots, pi_s.atom(j));
      IntT o = eval_as(s.f, slots.env());
      if (approx == nullptr) {
        fiber = &fibers.try_emplace(o, pi_t.size()).first->second;
        (*fiber)[i] += pi_s.prob(j);
      } else {
        for (std::size_t k = 0; k < pi_phi->size(); ++k) {
          IntT o_prime = apply_approx<IntT>(*approx, o, pi_phi->atom(k)[0]);
          fiber =
              &fibers.try_emplace(std::move(o_prime), pi_t.size()).first->second;
          (*fiber)[i] += pi_s.prob(j) * pi_phi->prob(k);
        }
      }
    }
  }
  return fibers;
}

// Conditional (alpha, g)-entropy from the fibers of one attacker input.
// Guess weights u_w(o) = sum_i p_T(i) * rest_mass(o, i) * g(w, i) are exact;
// Real enters at the norm step only. The gain is walked column-sparse since
// id/parity-style matrices are mostly zeros.
template <typename Real, typename IntT>
double entropy_from_fibers(const Fibers<IntT>& fibers,
                           const DiscreteDist& pi_t, const GainSpec& gain,
                           const std::vector<std::size_t>& gain_cols,
                           const EntropyOrder& order) {
  const std::size_t n_w = gain.num_guesses();

  // Non-zero gain entries per target-support index, premultiplied by the
  // target prior: (w, p_T(i) * g(w, i)).
  std::vector<std::vector<std::pair<std::size_t, Rational>>> sparse(
      pi_t.size());
  for (std::size_t i = 0; i < pi_t.size(); ++i) {
    for (std::size_t w = 0; w < n_w; ++w) {
      const Rational& g = gain.gain(w, gain_cols[i]);
      if (g != 0) sparse[i].emplace_back(w, pi_t.prob(i) * g);
    }
  }

  std::vector<Rational> u(n_w);
  auto fill_u = [&](const std::vector<Rational>& rest) {
    std::fill(u.begin(), u.end(), Rational(0));
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (rest[i] == 0) continue;
      for (const auto& [w, pg] : sparse[i]) u[w] += pg * rest[i];
    }
  };

  // alpha = infinity keeps V rational end to end: max and sum are exact, so
  // deterministic-leak cases give V = 1 and entropy 0 exactly.
  if (order.is_infinity()) {
    Rational v(0);
    for (const auto& [o, rest] : fibers) {
      fill_u(rest);
      const Rational* best = &u[0];
      for (std::size_t w = 1; w < n_w; ++w) {
        if (u[w] > *best) best = &u[w];
      }
      v += *best;
    }
    double h = -static_cast<double>(detail::log2_real(rational_to<Real>(v)));
    return h == 0.0 ? 0.0 : h;  // canonicalize -0
  }

  if (order.is_one()) {
    Real h(0);
    for (const auto& [o, rest] : fibers) {
      Rational p_o(0);
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] != 0) p_o += pi_t.prob(i) * rest[i];
      }
      if (p_o == 0) continue;
      fill_u(rest);
      for (std::size_t w = 0; w < n_w; ++w) {
        // p(o|x_A) * mu(reward | o) accumulated as -u * log2(u / p(o)).
        if (u[w] != 0) {
          Rational cond = u[w] / p_o;
          h -= rational_to<Real>(u[w]) *
               detail::log2_real(rational_to<Real>(cond));
        }
      }
    }
    double out = static_cast<double>(h);
    return out == 0.0 ? 0.0 : out;
  }

  const double alpha = order.alpha();
  Real v(0);
  std::vector<Real> u_real(n_w);
  for (const auto& [o, rest] : fibers) {
    fill_u(rest);
    for (std::size_t w = 0; w < n_w; ++w) u_real[w] = rational_to<Real>(u[w]);
    v += alpha_norm<Real>(u_real, alpha);
  }
  Real h = Real(alpha / (1.0 - alpha)) * detail::log2_real(v);
  double out = static_cast<double>(h);
  return out == 0.0 ? 0.0 : out;
}

template <typename IntT>
double profile_entry(const ScenarioSpec& s, const Tuple& x_a,
                     const ApproximationSpec* approx,
                     const DiscreteDist* pi_phi,
                     const std::vector<std::size_t>& gain_cols,
                     Precision precision) {
  Fibers<IntT> fibers = accumulate_fibers<IntT>(s, x_a, approx, pi_phi);
  if (precision == Precision::Extended)
    return entropy_from_fibers<Real50>(fibers, s.targets.prior, s.gain,
                                       gain_cols, s.order);
  return entropy_from_fibers<double>(fibers, s.targets.prior, s.gain,
                                     gain_cols, s.order);
}

LeakageProfile profile_impl(const ScenarioSpec& s,
                            const ApproximationSpec* approx,
                            const DiscreteDist* pi_phi,
                            const LeakageOptions& opts) {
  s.validate();
  if (s.order.is_one() && !s.gain.is_unitary())
    throw Error("order-1 analysis requires a unitary gain function");
  if (approx != nullptr) {
    if (pi_phi->dim() != 1)
      throw Error("virtual input distribution must be one-dimensional");
    for (const Tuple& t : pi_phi->support()) {
      if (!approx->phi_domain.contains(t[0]))
        throw Error("pi_phi puts mass outside the virtual input domain");
    }
  }

  const std::vector<Tuple> attacker_inputs =
      enumerate_domain(s.attackers.domains);
  std::uint64_t combos = attacker_inputs.size();
  combos *= s.targets.prior.size();
  combos *= s.spectators.prior.size();
  if (approx != nullptr) combos *= pi_phi->size();
  if (combos > opts.max_enumerated)
    throw Error("domain too large: " + std::to_string(combos) +
                " combinations exceed the configured cap of " +
                std::to_string(opts.max_enumerated));

  std::vector<std::size_t> gain_cols(s.targets.prior.size());
  for (std::size_t i = 0; i < s.targets.prior.size(); ++i)
    gain_cols[i] = s.gain.secret_index(s.targets.prior.atom(i));

  LeakageProfile profile;
  profile.entries.resize(attacker_inputs.size());
  const bool use_bigint = s.allow_bigint && !s.fits_int64();

  auto compute_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      double h =
          use_bigint
              ? profile_entry<BigInt>(s, attacker_inputs[idx], approx, pi_phi,
                                      gain_cols, opts.precision)
              : profile_entry<Value>(s, attacker_inputs[idx], approx, pi_phi,
                                     gain_cols, opts.precision);
      profile.entries[idx] = {attacker_inputs[idx], h};
    }
  };

  unsigned n_threads = opts.threads != 0 ? opts.threads
                                         : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, attacker_inputs.size()));
  n_threads = std::max(1u, n_threads);
  if (n_threads == 1) {
    compute_range(0, attacker_inputs.size());
  } else {
    // Each x_A task is pure and lands in its own slot, so the reduction is
    // order-independent.
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(n_threads);
    std::size_t chunk =
        (attacker_inputs.size() + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(attacker_inputs.size(), begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        try {
          compute_range(begin, end);
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
  return profile;
}

}  // namespace

double LeakageProfile::at(const Tuple& x_a) const {
  for (const Entry& e : entries) {
    if (e.x_a == x_a) return e.entropy;
  }
  throw Error("attacker input not in profile: " + tuple_to_string(x_a));
}

DiscreteDist output_dist_given(const Expr& f,
                               std::span<const std::string> fixed_names,
                               const Tuple& fixed_values,
                               std::span<const std::string> rest_names,
                               const DiscreteDist& joint_rest) {
  if (fixed_names.size() != fixed_values.size())
    throw Error("fixed name/value length mismatch");
  if (rest_names.size() != joint_rest.dim())
    throw Error("rest names must match the joint distribution dimension");
  std::map<std::string, Value> env;
  for (std::size_t i = 0; i < fixed_names.size(); ++i)
    env[fixed_names[i]] = fixed_values[i];

  std::map<Value, Rational> acc;
  for (std::size_t j = 0; j < joint_rest.size(); ++j) {
    for (std::size_t i = 0; i < rest_names.size(); ++i)
      env[rest_names[i]] = joint_rest.atom(j)[i];
    acc[f.eval(env)] += joint_rest.prob(j);
  }
  std::vector<Tuple> support;
  std::vector<Rational> weights;
  for (auto& [o, p] : acc) {
    support.push_back(Tuple{o});
    weights.push_back(std::move(p));
  }
  return DiscreteDist::from_weights(std::move(support), std::move(weights));
}

LeakageProfile awae(const ScenarioSpec& s, const LeakageOptions& opts) {
  return profile_impl(s, nullptr, nullptr, opts);
}

LeakageProfile awae_randomized(const ScenarioSpec& s,
                               const ApproximationSpec& approx,
                               const DiscreteDist& pi_phi,
                               const LeakageOptions& opts) {
  return profile_impl(s, &approx, &pi_phi, opts);
}

std::vector<BigInt> output_domain_big(const ScenarioSpec& s) {
  EnvSlots<BigInt> slots;
  auto a_slots = slots.bind(s.attackers.names);
  auto t_slots = slots.bind(s.targets.names);
  auto s_slots = slots.bind(s.spectators.names);

  std::vector<Tuple> a = enumerate_domain(s.attackers.domains);
  std::vector<Tuple> t = enumerate_domain(s.targets.domains);
  std::vector<Tuple> sp = enumerate_domain(s.spectators.domains);

  std::set<BigInt> outputs;
  for (const Tuple& xa : a) {
    slots.set(a_slots, xa);
    for (const Tuple& xt : t) {
      slots.set(t_slots, xt);
      for (const Tuple& xs : sp) {
        slots.set(s_slots, xs);
        outputs.insert(s.f.eval_big(slots.env()));
      }
    }
  }
  return {outputs.begin(), outputs.end()};
}

std::vector<Value> output_domain(const ScenarioSpec& s) {
  std::vector<BigInt> big = output_domain_big(s);
  std::vector<Value> out;
  out.reserve(big.size());
  for (const BigInt& o : big) {
    if (o < std::numeric_limits<Value>::min() ||
        o > std::numeric_limits<Value>::max())
      throw Error("output domain exceeds 64-bit range; use the big variant");
    out.push_back(o.convert_to<Value>());
  }
  return out;
}

std::vector<BigInt> randomized_output_domain_big(
    const ScenarioSpec& s, const ApproximationSpec& approx) {
  std::set<BigInt> outputs;
  for (const BigInt& o : output_domain_big(s)) {
    for (Value phi : approx.phi_domain.values())
      outputs.insert(approx.apply_big(o, phi));
  }
  return {outputs.begin(), outputs.end()};
}

std::vector<Value> randomized_output_domain(const ScenarioSpec& s,
                                            const ApproximationSpec& approx) {
  std::vector<BigInt> big = randomized_output_domain_big(s, approx);
  std::vector<Value> out;
  out.reserve(big.size());
  for (const BigInt& o : big) {
    if (o < std::numeric_limits<Value>::min() ||
        o > std::numeric_limits<Value>::max())
      throw Error("output domain exceeds 64-bit range; use the big variant");
    out.push_back(o.convert_to<Value>());
  }
  return out;
}

}  // namespace smcpriv
