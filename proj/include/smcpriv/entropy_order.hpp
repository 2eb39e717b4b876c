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

#include "smcpriv/numeric.hpp"

namespace smcpriv {

// Order of the entropy family: 1, a finite positive alpha != 1, or infinity.
class EntropyOrder {
 public:
  enum class Tag { One, Finite, Infinity };

  static EntropyOrder one() { return EntropyOrder(Tag::One, 1.0); }
  static EntropyOrder infinity() {
    return EntropyOrder(Tag::Infinity, std::numeric_limits<double>::infinity());
  }
  // Any finite alpha > 0; alpha == 1 normalizes to the One tag.
  static EntropyOrder finite(double alpha) {
    if (!(alpha > 0.0) || std::isinf(alpha))
      throw Error("entropy order must be a positive real or infinity");
    if (alpha == 1.0) return one();
    return EntropyOrder(Tag::Finite, alpha);
  }
  static EntropyOrder parse(const std::string& text);

  Tag tag() const { return tag_; }
  bool is_one() const { return tag_ == Tag::One; }
  bool is_infinity() const { return tag_ == Tag::Infinity; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  // Defined for the Finite tag only.
  double alpha() const { return alpha_; }

  std::string to_string() const;

 private:
  EntropyOrder(Tag tag, double alpha) : tag_(tag), alpha_(alpha) {}

  Tag tag_;
  double alpha_;
};

}  // namespace smcpriv
