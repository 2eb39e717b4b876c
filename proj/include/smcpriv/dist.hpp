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
#include <optional>
#include <string>
#include <vector>

#include "smcpriv/entropy_order.hpp"
#include "smcpriv/numeric.hpp"

namespace smcpriv {

using Value = std::int64_t;
// Integer point of dimension d >= 1. Scalar values are 1-tuples.
using Tuple = std::vector<Value>;

std::string tuple_to_string(const Tuple& t);

// Domain of a single integer variable, kept as a sorted list of distinct
// values (intervals are expanded on construction).
class VarDomain {
 public:
  static VarDomain interval(Value lo, Value hi);
  static VarDomain explicit_set(std::vector<Value> values);

  const std::vector<Value>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool contains(Value v) const;

 private:
  std::vector<Value> values_;
};

// Domain of a tuple of variables: one VarDomain per coordinate.
using DomainSpec = std::vector<VarDomain>;

// All tuples of a DomainSpec in lexicographic order. An empty DomainSpec
// yields the single empty tuple (the unit for products).
std::vector<Tuple> enumerate_domain(const DomainSpec& domain);

// Finite probability distribution over integer tuples. Weights are exact
// rationals, strictly positive, and sum to exactly 1; the stored support is
// therefore supp(pi). Immutable after construction.
class DiscreteDist {
 public:
  // Entries must have distinct tuples of equal dimension and non-negative
  // weights. Zero-weight entries are dropped. If the weight sum differs from
  // 1 by at most 1e-12 the distribution is renormalized exactly; otherwise
  // construction fails.
  static DiscreteDist from_weights(std::vector<Tuple> support,
                                   std::vector<Rational> weights);

  // Unit distribution: probability 1 on the empty tuple.
  static DiscreteDist unit();

  std::size_t size() const { return support_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Tuple>& support() const { return support_; }
  const Tuple& atom(std::size_t i) const { return support_[i]; }
  const Rational& prob(std::size_t i) const { return probs_[i]; }

  // Probability of a tuple; 0 when outside the support.
  Rational mass(const Tuple& v) const;
  Rational mass(Value v) const { return mass(Tuple{v}); }

  std::optional<std::size_t> index_of(const Tuple& v) const;

 private:
  DiscreteDist(std::vector<Tuple> support, std::vector<Rational> probs,
               std::size_t dim)
      : support_(std::move(support)), probs_(std::move(probs)), dim_(dim) {}

  std::vector<Tuple> support_;   // sorted lexicographically
  std::vector<Rational> probs_;  // aligned with support_
  std::size_t dim_;
};

// Equal mass on every tuple of the domain.
DiscreteDist uniform(const DomainSpec& domain);
DiscreteDist uniform(const VarDomain& domain);

// Triangular distribution with mode n over [1, n]: k has mass 2k/(n(n+1)).
DiscreteDist linear(Value n);

DiscreteDist point_mass(Tuple v);
DiscreteDist point_mass(Value v);

// Independent product: support is the Cartesian product (tuples
// concatenated), mass of (u, v) is d1(u) * d2(v).
DiscreteDist product(const DiscreteDist& d1, const DiscreteDist& d2);

// Marginal over a subset of coordinate positions (used by tests to check the
// product inverse).
DiscreteDist marginal(const DiscreteDist& d,
                      const std::vector<std::size_t>& coords);

// Renyi entropy of order alpha in bits: (alpha/(1-alpha)) * log2 ||p||_alpha,
// Shannon entropy at alpha = 1, min-entropy -log2 max p at alpha = infinity.
double renyi_entropy(const DiscreteDist& d, const EntropyOrder& order);

}  // namespace smcpriv
