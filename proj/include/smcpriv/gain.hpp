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
#include "smcpriv/numeric.hpp"

namespace smcpriv {

// Gain function g : W x D_T -> [0, 1] with its guess set W. Rows are guesses,
// columns are target-domain tuples (in the order of `secrets`). Every secret
// must offer some reward (beta > 0); beta is the least column sum, and the
// gain is unitary when every column sums to 1 (within 1e-12, after which the
// exact rational sums are trusted).
class GainSpec {
 public:
  static GainSpec identity(std::vector<Tuple> target_domain);

  // Guess set {0, 1}; rewards matching the parity of a scalar secret.
  static GainSpec parity(std::vector<Tuple> target_domain);

  static GainSpec explicit_matrix(std::vector<std::string> guesses,
                                  std::vector<Tuple> target_domain,
                                  std::vector<std::vector<Rational>> matrix);

  std::size_t num_guesses() const { return guesses_.size(); }
  std::size_t num_secrets() const { return secrets_.size(); }
  const std::vector<std::string>& guesses() const { return guesses_; }
  const std::vector<Tuple>& secrets() const { return secrets_; }

  const Rational& gain(std::size_t w, std::size_t x) const {
    return matrix_[w * secrets_.size() + x];
  }
  double gain_d(std::size_t w, std::size_t x) const {
    return matrix_d_[w * secrets_.size() + x];
  }

  // Column index for a target tuple; throws if the tuple is not in D_T.
  std::size_t secret_index(const Tuple& x) const;

  const Rational& beta() const { return beta_; }
  double beta_d() const { return to_double(beta_); }
  bool is_unitary() const { return unitary_; }

 private:
  GainSpec(std::vector<std::string> guesses, std::vector<Tuple> secrets,
           std::vector<Rational> matrix);

  std::vector<std::string> guesses_;
  std::vector<Tuple> secrets_;
  std::vector<Rational> matrix_;  // row-major |W| x |D_T|
  std::vector<double> matrix_d_;  // cached conversion
  Rational beta_;
  bool unitary_;
};

}  // namespace smcpriv
