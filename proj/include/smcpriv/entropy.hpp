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

#include <span>

#include "smcpriv/entropy_order.hpp"
#include "smcpriv/gain.hpp"
#include "smcpriv/numeric.hpp"

namespace smcpriv {

// (alpha, g)-vulnerability of a non-negative weight vector over the gain's
// target domain:
//   V = || < sum_x w(x) g(w, x) >_w ||_alpha      (finite alpha)
//   V = max_w sum_x w(x) g(w, x)                  (alpha = infinity)
// Weights need not sum to 1; the alpha-norm is homogeneous and callers
// exploit that. Order One is rejected (the order-1 notion is an entropy, not
// a norm; use entropy()).
double vulnerability(std::span<const double> weights, const GainSpec& g,
                     const EntropyOrder& order);

// (alpha, g)-entropy of a probability vector over the gain's target domain
// (weights must sum to 1 within 1e-9):
//   H = (alpha/(1-alpha)) log2 V   (finite alpha != 1)
//   H = -log2 V                    (alpha = infinity)
//   H = sum_w mu(sum_x p(x) g(w,x))  (alpha = 1; matches the limit of the
//                                     finite-alpha family for unitary g)
double entropy(std::span<const double> weights, const GainSpec& g,
               const EntropyOrder& order);

}  // namespace smcpriv
