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

#include "smcpriv/dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace smcpriv {

std::string tuple_to_string(const Tuple& t) {
  if (t.size() == 1) return std::to_string(t[0]);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) os << ',';
    os << t[i];
  }
  os << ')';
  return os.str();
}

VarDomain VarDomain::interval(Value lo, Value hi) {
  if (lo > hi) throw Error("empty domain interval");
  VarDomain d;
  d.values_.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Value v = lo; v <= hi; ++v) d.values_.push_back(v);
  return d;
}

VarDomain VarDomain::explicit_set(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) throw Error("empty domain set");
  VarDomain d;
  d.values_ = std::move(values);
  return d;
}

bool VarDomain::contains(Value v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

std::vector<Tuple> enumerate_domain(const DomainSpec& domain) {
  std::vector<Tuple> out{Tuple{}};
  for (const VarDomain& var : domain) {
    std::vector<Tuple> next;
    next.reserve(out.size() * var.size());
    for (const Tuple& prefix : out) {
      for (Value v : var.values()) {
        Tuple t = prefix;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

DiscreteDist DiscreteDist::from_weights(std::vector<Tuple> support,
                                        std::vector<Rational> weights) {
  if (support.size() != weights.size())
    throw Error("support/weight length mismatch");
  if (support.empty()) throw Error("empty distribution");
  std::size_t dim = support.front().size();

  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&support](std::size_t a, std::size_t b) {
    return support[a] < support[b];
  });

  std::vector<Tuple> sorted_support;
  std::vector<Rational> sorted_probs;
  sorted_support.reserve(support.size());
  sorted_probs.reserve(support.size());
  Rational total(0);
  for (std::size_t i : order) {
    if (support[i].size() != dim)
      throw Error("mixed tuple dimensions in distribution");
    if (weights[i] < 0) throw Error("negative probability weight");
    if (weights[i] == 0) continue;
    if (!sorted_support.empty() && sorted_support.back() == support[i])
      throw Error("duplicate support entry: " + tuple_to_string(support[i]));
    total += weights[i];
    sorted_support.push_back(std::move(support[i]));
    sorted_probs.push_back(std::move(weights[i]));
  }
  if (sorted_support.empty()) throw Error("all weights are zero");

  Rational deviation = total - 1;
  if (boost::multiprecision::abs(deviation) > Rational(1, 1000000000000LL))
    throw Error("probability weights sum to " + total.str() +
                ", outside the 1e-12 normalization tolerance");
  if (total != 1) {
    for (Rational& p : sorted_probs) p /= total;
  }
  return DiscreteDist(std::move(sorted_support), std::move(sorted_probs), dim);
}

DiscreteDist DiscreteDist::unit() {
  return DiscreteDist({Tuple{}}, {Rational(1)}, 0);
}

Rational DiscreteDist::mass(const Tuple& v) const {
  auto idx = index_of(v);
  return idx ? probs_[*idx] : Rational(0);
}

std::optional<std::size_t> DiscreteDist::index_of(const Tuple& v) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), v);
  if (it == support_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - support_.begin());
}

DiscreteDist uniform(const DomainSpec& domain) {
  std::vector<Tuple> tuples = enumerate_domain(domain);
  if (domain.empty() || tuples.empty()) throw Error("empty domain");
  Rational w(1, static_cast<long long>(tuples.size()));
  std::vector<Rational> weights(tuples.size(), w);
  return DiscreteDist::from_weights(std::move(tuples), std::move(weights));
}

DiscreteDist uniform(const VarDomain& domain) {
  return uniform(DomainSpec{domain});
}

DiscreteDist linear(Value n) {
  if (n < 1) throw Error("linear distribution requires n >= 1");
  std::vector<Tuple> support;
  std::vector<Rational> weights;
  Rational denom = Rational(n) * Rational(n + 1);
  for (Value k = 1; k <= n; ++k) {
    support.push_back(Tuple{k});
    weights.push_back(Rational(2 * k) / denom);
  }
  return DiscreteDist::from_weights(std::move(support), std::move(weights));
}

DiscreteDist point_mass(Tuple v) {
  return DiscreteDist::from_weights({std::move(v)}, {Rational(1)});
}

DiscreteDist point_mass(Value v) { return point_mass(Tuple{v}); }

DiscreteDist product(const DiscreteDist& d1, const DiscreteDist& d2) {
  std::vector<Tuple> support;
  std::vector<Rational> weights;
  support.reserve(d1.size() * d2.size());
  weights.reserve(d1.size() * d2.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    for (std::size_t j = 0; j < d2.size(); ++j) {
      Tuple t = d1.atom(i);
      t.insert(t.end(), d2.atom(j).begin(), d2.atom(j).end());
      support.push_back(std::move(t));
      weights.push_back(d1.prob(i) * d2.prob(j));
    }
  }
  return DiscreteDist::from_weights(std::move(support), std::move(weights));
}

DiscreteDist marginal(const DiscreteDist& d,
                      const std::vector<std::size_t>& coords) {
  std::vector<Tuple> support;
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < d.size(); ++i) {
    Tuple t;
    t.reserve(coords.size());
    for (std::size_t c : coords) {
      if (c >= d.dim()) throw Error("marginal coordinate out of range");
      t.push_back(d.atom(i)[c]);
    }
    auto it = std::find(support.begin(), support.end(), t);
    if (it == support.end()) {
      support.push_back(std::move(t));
      weights.push_back(d.prob(i));
    } else {
      weights[static_cast<std::size_t>(it - support.begin())] += d.prob(i);
    }
  }
  return DiscreteDist::from_weights(std::move(support), std::move(weights));
}

double renyi_entropy(const DiscreteDist& d, const EntropyOrder& order) {
  std::vector<double> p(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) p[i] = to_double(d.prob(i));
  switch (order.tag()) {
    case EntropyOrder::Tag::One: {
      KahanSum h;
      for (double x : p) h.add(mu(x));
      return h.value();
    }
    case EntropyOrder::Tag::Infinity:
      return -std::log2(max_norm<double>(p));
    case EntropyOrder::Tag::Finite: {
      double a = order.alpha();
      return a / (1.0 - a) * std::log2(alpha_norm(p, a));
    }
  }
  throw Error("corrupt entropy order");
}

}  // namespace smcpriv
