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

#include "smcpriv/gain.hpp"

#include <algorithm>

namespace smcpriv {

GainSpec::GainSpec(std::vector<std::string> guesses,
                   std::vector<Tuple> secrets, std::vector<Rational> matrix)
    : guesses_(std::move(guesses)),
      secrets_(std::move(secrets)),
      matrix_(std::move(matrix)) {
  if (guesses_.empty()) throw Error("gain function needs at least one guess");
  if (secrets_.empty()) throw Error("gain function needs a non-empty domain");
  if (matrix_.size() != guesses_.size() * secrets_.size())
    throw Error("gain matrix shape mismatch");
  for (const Rational& g : matrix_) {
    if (g < 0 || g > 1) throw Error("gain entries must lie in [0, 1]");
  }

  const Rational tol(1, 1000000000000LL);
  unitary_ = true;
  bool first = true;
  for (std::size_t x = 0; x < secrets_.size(); ++x) {
    Rational col(0);
    for (std::size_t w = 0; w < guesses_.size(); ++w) col += gain(w, x);
    if (boost::multiprecision::abs(Rational(col - 1)) > tol) unitary_ = false;
    if (first || col < beta_) beta_ = col;
    first = false;
  }
  if (beta_ <= 0)
    throw Error("gain function is not positive: some secret has zero reward");

  matrix_d_.resize(matrix_.size());
  for (std::size_t i = 0; i < matrix_.size(); ++i)
    matrix_d_[i] = to_double(matrix_[i]);
}

GainSpec GainSpec::identity(std::vector<Tuple> target_domain) {
  std::size_t n = target_domain.size();
  std::vector<std::string> guesses;
  guesses.reserve(n);
  for (const Tuple& t : target_domain) guesses.push_back(tuple_to_string(t));
  std::vector<Rational> matrix(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) matrix[i * n + i] = 1;
  return GainSpec(std::move(guesses), std::move(target_domain),
                  std::move(matrix));
}

GainSpec GainSpec::parity(std::vector<Tuple> target_domain) {
  for (const Tuple& t : target_domain) {
    if (t.size() != 1)
      throw Error("parity gain requires a scalar target domain");
  }
  std::vector<Rational> matrix(2 * target_domain.size(), Rational(0));
  for (std::size_t x = 0; x < target_domain.size(); ++x) {
    auto bit = static_cast<std::size_t>(((target_domain[x][0] % 2) + 2) % 2);
    matrix[bit * target_domain.size() + x] = 1;
  }
  return GainSpec({"0", "1"}, std::move(target_domain), std::move(matrix));
}

GainSpec GainSpec::explicit_matrix(std::vector<std::string> guesses,
                                   std::vector<Tuple> target_domain,
                                   std::vector<std::vector<Rational>> matrix) {
  if (matrix.size() != guesses.size())
    throw Error("gain matrix must have one row per guess");
  std::vector<Rational> flat;
  flat.reserve(guesses.size() * target_domain.size());
  for (const auto& row : matrix) {
    if (row.size() != target_domain.size())
      throw Error("gain matrix row length must match the target domain");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return GainSpec(std::move(guesses), std::move(target_domain),
                  std::move(flat));
}

std::size_t GainSpec::secret_index(const Tuple& x) const {
  // Columns keep the caller's order (it fixes the matrix layout), so this is
  // a linear scan; target domains are small.
  auto it = std::find(secrets_.begin(), secrets_.end(), x);
  if (it == secrets_.end())
    throw Error("tuple outside the gain function's target domain: " +
                tuple_to_string(x));
  return static_cast<std::size_t>(it - secrets_.begin());
}

}  // namespace smcpriv
