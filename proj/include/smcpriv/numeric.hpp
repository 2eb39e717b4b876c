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

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace smcpriv {

// Exact arithmetic carriers. Probabilities stay rational from construction
// through conditional-distribution enumeration; conversion to floating point
// happens only at the norm/entropy step.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Extended-precision float (50 significand digits) for the optional
// cross-checking mode.
using Real50 = boost::multiprecision::cpp_bin_float_50;

enum class Precision { DoubleLogspace, Extended };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expression text could not be tokenized or parsed; carries a 0-based
// character position into the offending string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Real50 to_real50(const Rational& r) { return r.convert_to<Real50>(); }

template <typename Real>
Real rational_to(const Rational& r) {
  return r.convert_to<Real>();
}

// Compensated (Kahan) accumulator for the double-precision entropy kernels.
class KahanSum {
 public:
  void add(double x) {
    double y = x - compensation_;
    double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

namespace detail {

inline double pow_real(double base, double e) { return std::pow(base, e); }
inline Real50 pow_real(const Real50& base, const Real50& e) {
  return boost::multiprecision::pow(base, e);
}
inline double log2_real(double x) { return std::log2(x); }
inline Real50 log2_real(const Real50& x) {
  return boost::multiprecision::log2(x);
}

}  // namespace detail

// alpha-norm of a non-negative vector, computed with the maximum factored
// out so that large alpha (say 200 or 10^4) does not underflow:
//   ||v||_a = m * (sum_i (v_i/m)^a)^(1/a),  m = max_i v_i.
// Ratios below the representable range vanish from the sum, which is the
// correct limit. Valid for all finite alpha > 0.
template <typename Real>
Real alpha_norm(std::span<const Real> v, double alpha) {
  Real m(0);
  for (const Real& x : v) {
    if (x > m) m = x;
  }
  if (m == Real(0)) return Real(0);
  Real s(0);
  if constexpr (std::is_same_v<Real, double>) {
    KahanSum ks;
    for (const Real& x : v) {
      if (x > 0.0) ks.add(std::pow(x / m, alpha));
    }
    s = ks.value();
  } else {
    for (const Real& x : v) {
      if (x > Real(0)) s += detail::pow_real(x / m, Real(alpha));
    }
  }
  return m * detail::pow_real(s, Real(1.0 / alpha));
}

inline double alpha_norm(std::span<const double> v, double alpha) {
  return alpha_norm<double>(v, alpha);
}

template <typename Real>
Real max_norm(std::span<const Real> v) {
  Real m(0);
  for (const Real& x : v) {
    if (x > m) m = x;
  }
  return m;
}

// mu(x) = -x * log2(x), continuously extended by mu(0) = 0.
inline double mu(double x) {
  if (x < 0.0) throw Error("mu: negative argument");
  if (x == 0.0) return 0.0;
  return -x * std::log2(x);
}

template <typename Real>
Real mu_t(const Real& x) {
  if (x < Real(0)) throw Error("mu: negative argument");
  if (x == Real(0)) return Real(0);
  return -x * detail::log2_real(x);
}

}  // namespace smcpriv
