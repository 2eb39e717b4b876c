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

#include <string>
#include <vector>

#include "smcpriv/dist.hpp"
#include "smcpriv/entropy.hpp"
#include "smcpriv/expr.hpp"
#include "smcpriv/gain.hpp"

namespace smcpriv {

// One side of the (attackers, targets, spectators) partition: named
// variables, their domains, and the group's prior (a distribution over the
// group's tuple space, usually a product of per-variable priors). The
// spectator group may be empty, in which case the prior is the unit
// distribution on the empty tuple.
struct PartyGroup {
  std::vector<std::string> names;
  DomainSpec domains;
  DiscreteDist prior = DiscreteDist::unit();

  std::size_t arity() const { return names.size(); }
};

// A full analysis instance: the public function, the partition with priors,
// the gain function over the targets' domain, and the entropy order.
struct ScenarioSpec {
  Expr f = Expr::literal(0);
  PartyGroup attackers;
  PartyGroup targets;
  PartyGroup spectators;
  GainSpec gain = GainSpec::identity({Tuple{0}});
  EntropyOrder order = EntropyOrder::infinity();

  // Evaluate with arbitrary-precision integers instead of rejecting
  // scenarios whose intermediate values may exceed 64 bits.
  bool allow_bigint = false;

  // Checks the partition (each free variable of f declared exactly once
  // across groups, no duplicate names), prior supports against domains, gain
  // domain against the targets' domain, and the interval analysis for 64-bit
  // safety (unless allow_bigint). Throws Error on violation.
  void validate() const;

  // True when the 64-bit interval check passes for f over the declared
  // domains; validate() rejects false unless allow_bigint.
  bool fits_int64() const;
};

// Interval check for an arbitrary expression over per-variable bounds taken
// from the scenario's declared domains plus (optionally) extra variables.
bool expr_fits_int64(
    const Expr& e,
    const std::vector<std::pair<std::string, Expr::Interval>>& bounds);

// Per-variable bounds of a scenario's declared domains, keyed by name.
std::vector<std::pair<std::string, Expr::Interval>> scenario_bounds(
    const ScenarioSpec& s);

}  // namespace smcpriv
