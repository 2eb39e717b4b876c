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

#include "smcpriv/entropy.hpp"

#include <cmath>
#include <vector>

namespace smcpriv {

EntropyOrder EntropyOrder::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  std::size_t consumed = 0;
  double alpha = 0.0;
  try {
    alpha = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw Error("cannot parse entropy order: " + text);
  }
  if (consumed != text.size())
    throw Error("cannot parse entropy order: " + text);
  return finite(alpha);
}

std::string EntropyOrder::to_string() const {
  switch (tag_) {
    case Tag::One:
      return "1";
    case Tag::Infinity:
      return "inf";
    case Tag::Finite: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", alpha_);
      return buf;
    }
  }
  return "?";
}

namespace {

std::vector<double> guess_rewards(std::span<const double> weights,
                                  const GainSpec& g) {
  if (weights.size() != g.num_secrets())
    throw Error("weight vector length must match the gain's target domain");
  std::vector<double> rewards(g.num_guesses());
  for (std::size_t w = 0; w < g.num_guesses(); ++w) {
    KahanSum s;
    for (std::size_t x = 0; x < g.num_secrets(); ++x) {
      if (weights[x] != 0.0) s.add(weights[x] * g.gain_d(w, x));
    }
    rewards[w] = s.value();
  }
  return rewards;
}

}  // namespace

double vulnerability(std::span<const double> weights, const GainSpec& g,
                     const EntropyOrder& order) {
  if (order.is_one())
    throw Error("vulnerability is undefined at order 1; use entropy()");
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w))
      throw Error("vulnerability weights must be finite and non-negative");
  }
  std::vector<double> rewards = guess_rewards(weights, g);
  if (order.is_infinity()) return max_norm<double>(rewards);
  return alpha_norm(rewards, order.alpha());
}

double entropy(std::span<const double> weights, const GainSpec& g,
               const EntropyOrder& order) {
  KahanSum total;
  for (double w : weights) total.add(w);
  if (std::abs(total.value() - 1.0) > 1e-9)
    throw Error("entropy expects normalized weights");

  if (order.is_one()) {
    std::vector<double> rewards = guess_rewards(weights, g);
    KahanSum h;
    for (double r : rewards) h.add(mu(r));
    return h.value();
  }
  double v = vulnerability(weights, g, order);
  if (order.is_infinity()) return -std::log2(v);
  double a = order.alpha();
  return a / (1.0 - a) * std::log2(v);
}

}  // namespace smcpriv
