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

#include "smcpriv/randomize.hpp"
#include "smcpriv/scenario.hpp"

namespace smcpriv {

struct LeakageOptions {
  Precision precision = Precision::DoubleLogspace;
  // Cap on enumerated (x_A, x_T, x_S[, phi]) combinations per profile.
  std::uint64_t max_enumerated = 100000000;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// The awae curve: conditional (alpha, g)-entropy of the targets' inputs
// given the public output, per attacker input. One entry per element of
// D_A, in lexicographic order.
struct LeakageProfile {
  struct Entry {
    Tuple x_a;
    double entropy;
  };
  std::vector<Entry> entries;

  double at(const Tuple& x_a) const;
  double at(Value x_a) const { return at(Tuple{x_a}); }
};

// Exact distribution of o = f(fixed, rest) where the fixed variables are
// pinned and the rest follow the given joint distribution. Fibers are
// accumulated as exact rationals.
DiscreteDist output_dist_given(const Expr& f,
                               std::span<const std::string> fixed_names,
                               const Tuple& fixed_values,
                               std::span<const std::string> rest_names,
                               const DiscreteDist& joint_rest);

// awae profile of the plain computation of f. Conditional fibers are
// enumerated over the priors' supports with exact rational accumulation;
// floats appear only in the final norm/entropy step.
LeakageProfile awae(const ScenarioSpec& s, const LeakageOptions& opts = {});

// awae profile of the randomized computation h(f(.), phi) where phi follows
// pi_phi: the approximation's virtual variable joins the spectators with the
// product prior pi_S * pi_phi.
LeakageProfile awae_randomized(const ScenarioSpec& s,
                               const ApproximationSpec& approx,
                               const DiscreteDist& pi_phi,
                               const LeakageOptions& opts = {});

// Achievable outputs of f over the declared (full) domains, sorted.
std::vector<Value> output_domain(const ScenarioSpec& s);
std::vector<BigInt> output_domain_big(const ScenarioSpec& s);

// Achievable randomized outputs h(o, phi) over o in D_O and phi in the
// approximation's domain, sorted. Theorem constants use its cardinality.
std::vector<Value> randomized_output_domain(const ScenarioSpec& s,
                                            const ApproximationSpec& approx);
std::vector<BigInt> randomized_output_domain_big(
    const ScenarioSpec& s, const ApproximationSpec& approx);

}  // namespace smcpriv
