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

#include "smcpriv/scenario.hpp"

#include <set>

namespace smcpriv {

namespace {

void check_group(const PartyGroup& g, const std::string& label,
                 bool may_be_empty) {
  if (g.names.empty() && !may_be_empty)
    throw Error(label + " group must not be empty");
  if (g.names.size() != g.domains.size())
    throw Error(label + " group: one domain per variable required");
  if (g.prior.dim() != g.names.size())
    throw Error(label + " group: prior dimension must match the variables");
  for (const Tuple& t : g.prior.support()) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!g.domains[i].contains(t[i]))
        throw Error(label + " prior puts mass on " + tuple_to_string(t) +
                    " outside the declared domain of " + g.names[i]);
    }
  }
}

}  // namespace

std::vector<std::pair<std::string, Expr::Interval>> scenario_bounds(
    const ScenarioSpec& s) {
  std::vector<std::pair<std::string, Expr::Interval>> bounds;
  for (const PartyGroup* g : {&s.attackers, &s.targets, &s.spectators}) {
    for (std::size_t i = 0; i < g->names.size(); ++i) {
      const auto& vals = g->domains[i].values();
      bounds.emplace_back(
          g->names[i],
          Expr::Interval{BigInt(vals.front()), BigInt(vals.back())});
    }
  }
  return bounds;
}

bool expr_fits_int64(
    const Expr& e,
    const std::vector<std::pair<std::string, Expr::Interval>>& bounds) {
  std::map<std::string, Expr::Interval> m(bounds.begin(), bounds.end());
  Expr::Interval iv = e.interval(m);
  const BigInt lo = std::numeric_limits<std::int64_t>::min();
  const BigInt hi = std::numeric_limits<std::int64_t>::max();
  return iv.lo >= lo && iv.hi <= hi;
}

bool ScenarioSpec::fits_int64() const {
  return expr_fits_int64(f, scenario_bounds(*this));
}

void ScenarioSpec::validate() const {
  check_group(attackers, "attacker", false);
  check_group(targets, "target", false);
  check_group(spectators, "spectator", true);

  std::set<std::string> declared;
  for (const PartyGroup* g : {&attackers, &targets, &spectators}) {
    for (const std::string& n : g->names) {
      if (!declared.insert(n).second)
        throw Error("variable declared in more than one group: " + n);
    }
  }
  for (const std::string& v : f.free_vars()) {
    if (!declared.count(v))
      throw Error("free variable of f not assigned to any group: " + v);
  }

  // The gain's columns must cover exactly the targets' domain tuples.
  std::vector<Tuple> target_tuples = enumerate_domain(targets.domains);
  if (gain.num_secrets() != target_tuples.size())
    throw Error("gain function domain size does not match the target domain");
  for (const Tuple& t : target_tuples) gain.secret_index(t);

  if (!allow_bigint && !fits_int64())
    throw Error(
        "function values may overflow 64-bit integers on the declared "
        "domains; enable the big-integer fallback to proceed");
}

}  // namespace smcpriv
