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

#include <optional>
#include <string>
#include <vector>

#include "smcpriv/scenario.hpp"

namespace smcpriv {

// Substitute computation o' = h(o, phi) driven by a virtual input phi.
//
// Additive approximations fix h(o, phi) = o + phi (one virtual variable).
// Mapped approximations supply h as an expression over the reserved name "o"
// and the virtual variable; they exist to exercise the general theory, the
// optimizer only targets the additive kind.
struct ApproximationSpec {
  enum class Kind { Additive, Mapped };

  static ApproximationSpec additive(std::string virtual_var,
                                    VarDomain phi_domain);
  static ApproximationSpec mapped(Expr h, std::string virtual_var,
                                  VarDomain phi_domain);

  Kind kind = Kind::Additive;
  std::string virtual_var = "phi";
  VarDomain phi_domain = VarDomain::interval(0, 0);
  std::optional<Expr> h;  // Mapped only

  // h(o, phi) with checked 64-bit arithmetic / arbitrary precision.
  Value apply(Value o, Value phi) const;
  BigInt apply_big(const BigInt& o, Value phi) const;
};

// A close approximation forces correlation between o and o': every
// h(., phi) must be injective on the achievable outputs. Additive
// approximations are always close.
bool is_close(const ApproximationSpec& approx, const std::vector<Value>& d_o);
bool is_close(const ApproximationSpec& approx, const std::vector<BigInt>& d_o);

// Maximal absolute distortion max |o - h(o, phi)| over the support of pi_phi
// and the achievable outputs; equals max |phi| over supp(pi_phi) for the
// additive kind.
BigInt distortion(const ApproximationSpec& approx, const DiscreteDist& pi_phi,
                  const std::vector<Value>& d_o);
BigInt distortion(const ApproximationSpec& approx, const DiscreteDist& pi_phi,
                  const std::vector<BigInt>& d_o);

// Per-attacker-input privacy gain of a randomization, and the theorem bounds
// it must respect.
struct GainReport {
  struct Row {
    Tuple x_a;
    double baseline;    // awae of f
    double randomized;  // awae of the substituted computation
    double gamma;       // randomized - baseline
  };
  std::vector<Row> rows;
  double h_alpha_phi;  // Renyi entropy of pi_phi at the scenario's order
};

struct BoundsReport {
  GainReport gains;
  bool close = false;          // whether the upper bound applies
  bool lower_ok = true;        // gamma >= -tol everywhere
  bool upper_ok = true;        // gamma <= H_alpha(pi_phi) + tol (close only)
  double tolerance = 1e-7;
  std::vector<std::string> violations;
};

struct LeakageOptions;  // leakage.hpp

GainReport gamma(const ScenarioSpec& s, const ApproximationSpec& approx,
                 const DiscreteDist& pi_phi);
GainReport gamma(const ScenarioSpec& s, const ApproximationSpec& approx,
                 const DiscreteDist& pi_phi, const LeakageOptions& opts);

// Checks the randomization bounds: gamma >= -tol for any approximation, and
// gamma <= H_alpha(pi_phi) + tol when the approximation is close. Violations
// are reported, not thrown.
BoundsReport verify_bounds(const ScenarioSpec& s,
                           const ApproximationSpec& approx,
                           const DiscreteDist& pi_phi);
BoundsReport verify_bounds(const ScenarioSpec& s,
                           const ApproximationSpec& approx,
                           const DiscreteDist& pi_phi,
                           const LeakageOptions& opts);

}  // namespace smcpriv
