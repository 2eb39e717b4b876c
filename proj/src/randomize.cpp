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

#include "smcpriv/randomize.hpp"

#include <cmath>
#include <set>

#include "smcpriv/leakage.hpp"

namespace smcpriv {

ApproximationSpec ApproximationSpec::additive(std::string virtual_var,
                                              VarDomain phi_domain) {
  ApproximationSpec a;
  a.kind = Kind::Additive;
  a.virtual_var = std::move(virtual_var);
  a.phi_domain = std::move(phi_domain);
  if (a.virtual_var.empty()) throw Error("virtual variable name is empty");
  return a;
}

ApproximationSpec ApproximationSpec::mapped(Expr h, std::string virtual_var,
                                            VarDomain phi_domain) {
  ApproximationSpec a;
  a.kind = Kind::Mapped;
  a.virtual_var = std::move(virtual_var);
  a.phi_domain = std::move(phi_domain);
  a.h = std::move(h);
  if (a.virtual_var.empty()) throw Error("virtual variable name is empty");
  if (a.virtual_var == "o")
    throw Error("virtual variable may not shadow the reserved output name");
  for (const std::string& v : a.h->free_vars()) {
    if (v != "o" && v != a.virtual_var)
      throw Error("post-processing map uses unknown variable: " + v);
  }
  return a;
}

Value ApproximationSpec::apply(Value o, Value phi) const {
  if (kind == Kind::Additive) {
    Value r;
    if (__builtin_add_overflow(o, phi, &r))
      throw Error("integer overflow in additive approximation");
    return r;
  }
  return h->eval({{"o", o}, {virtual_var, phi}});
}

BigInt ApproximationSpec::apply_big(const BigInt& o, Value phi) const {
  if (kind == Kind::Additive) return o + phi;
  return h->eval_big({{"o", o}, {virtual_var, BigInt(phi)}});
}

namespace {

Value apply_impl(const ApproximationSpec& a, Value o, Value phi) {
  return a.apply(o, phi);
}
BigInt apply_impl(const ApproximationSpec& a, const BigInt& o, Value phi) {
  return a.apply_big(o, phi);
}

template <typename IntT>
bool is_close_impl(const ApproximationSpec& approx,
                   const std::vector<IntT>& d_o) {
  if (approx.kind == ApproximationSpec::Kind::Additive) return true;
  for (Value phi : approx.phi_domain.values()) {
    std::set<IntT> images;
    for (const IntT& o : d_o) {
      if (!images.insert(apply_impl(approx, o, phi)).second) return false;
    }
  }
  return true;
}

template <typename IntT>
BigInt distortion_impl(const ApproximationSpec& approx,
                       const DiscreteDist& pi_phi,
                       const std::vector<IntT>& d_o) {
  if (pi_phi.dim() != 1)
    throw Error("virtual input distribution must be one-dimensional");
  BigInt worst(0);
  if (approx.kind == ApproximationSpec::Kind::Additive) {
    // |o - (o + phi)| = |phi|, independent of the outputs.
    for (const Tuple& t : pi_phi.support()) {
      BigInt d = boost::multiprecision::abs(BigInt(t[0]));
      if (d > worst) worst = d;
    }
    return worst;
  }
  for (const Tuple& t : pi_phi.support()) {
    for (const IntT& o : d_o) {
      BigInt d = boost::multiprecision::abs(
          BigInt(o) - BigInt(apply_impl(approx, o, t[0])));
      if (d > worst) worst = d;
    }
  }
  return worst;
}

}  // namespace

bool is_close(const ApproximationSpec& approx, const std::vector<Value>& d_o) {
  return is_close_impl(approx, d_o);
}
bool is_close(const ApproximationSpec& approx,
              const std::vector<BigInt>& d_o) {
  return is_close_impl(approx, d_o);
}

BigInt distortion(const ApproximationSpec& approx, const DiscreteDist& pi_phi,
                  const std::vector<Value>& d_o) {
  return distortion_impl(approx, pi_phi, d_o);
}
BigInt distortion(const ApproximationSpec& approx, const DiscreteDist& pi_phi,
                  const std::vector<BigInt>& d_o) {
  return distortion_impl(approx, pi_phi, d_o);
}

GainReport gamma(const ScenarioSpec& s, const ApproximationSpec& approx,
                 const DiscreteDist& pi_phi, const LeakageOptions& opts) {
  LeakageProfile baseline = awae(s, opts);
  LeakageProfile randomized = awae_randomized(s, approx, pi_phi, opts);

  GainReport report;
  report.h_alpha_phi = renyi_entropy(pi_phi, s.order);
  report.rows.reserve(baseline.entries.size());
  for (std::size_t i = 0; i < baseline.entries.size(); ++i) {
    const auto& b = baseline.entries[i];
    const auto& r = randomized.entries[i];
    if (!std::isfinite(b.entropy) || !std::isfinite(r.entropy))
      throw Error("non-finite entropy in gain computation");
    report.rows.push_back(
        {b.x_a, b.entropy, r.entropy, r.entropy - b.entropy});
  }
  return report;
}

GainReport gamma(const ScenarioSpec& s, const ApproximationSpec& approx,
                 const DiscreteDist& pi_phi) {
  return gamma(s, approx, pi_phi, LeakageOptions{});
}

BoundsReport verify_bounds(const ScenarioSpec& s,
                           const ApproximationSpec& approx,
                           const DiscreteDist& pi_phi,
                           const LeakageOptions& opts) {
  BoundsReport report;
  report.gains = gamma(s, approx, pi_phi, opts);
  const bool big = s.allow_bigint && !s.fits_int64();
  report.close = big ? is_close(approx, output_domain_big(s))
                     : is_close(approx, output_domain(s));

  for (const GainReport::Row& row : report.gains.rows) {
    if (row.gamma < -report.tolerance) {
      report.lower_ok = false;
      report.violations.push_back(
          "lower bound violated at x_A=" + tuple_to_string(row.x_a) +
          ": gamma=" + std::to_string(row.gamma));
    }
    if (report.close &&
        row.gamma > report.gains.h_alpha_phi + report.tolerance) {
      report.upper_ok = false;
      report.violations.push_back(
          "upper bound violated at x_A=" + tuple_to_string(row.x_a) +
          ": gamma=" + std::to_string(row.gamma) +
          " exceeds H_alpha(pi_phi)=" +
          std::to_string(report.gains.h_alpha_phi));
    }
  }
  return report;
}

BoundsReport verify_bounds(const ScenarioSpec& s,
                           const ApproximationSpec& approx,
                           const DiscreteDist& pi_phi) {
  return verify_bounds(s, approx, pi_phi, LeakageOptions{});
}

}  // namespace smcpriv
