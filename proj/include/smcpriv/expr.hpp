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
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smcpriv/numeric.hpp"

namespace smcpriv {

// Integer arithmetic expressions over named variables: literals, unary
// negation, +, -, *. No division, so evaluation over integer assignments is
// always defined and exact.
//
// Expr is an immutable value type (nodes are shared, never mutated), so
// evaluation is reentrant and safe to call concurrently.
class Expr {
 public:
  enum class Kind { Literal, Var, Neg, Add, Sub, Mul };

  static Expr literal(std::int64_t value);
  static Expr var(std::string name);
  static Expr neg(Expr operand);
  static Expr add(Expr lhs, Expr rhs);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);

  Kind kind() const { return node_->kind; }
  std::int64_t value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  Expr lhs() const { return Expr(node_->lhs); }
  Expr rhs() const { return Expr(node_->rhs); }

  // Evaluates with checked 64-bit arithmetic; throws Error on overflow or on
  // an unbound variable.
  std::int64_t eval(const std::map<std::string, std::int64_t>& env) const;

  // Arbitrary-precision evaluation for scenarios that fail the 64-bit
  // interval check but were loaded with the big-integer fallback enabled.
  BigInt eval_big(const std::map<std::string, BigInt>& env) const;

  std::set<std::string> free_vars() const;

  // Exact bounds of the expression value when each variable ranges over the
  // given closed interval. Used at scenario load to decide whether 64-bit
  // evaluation can overflow.
  struct Interval {
    BigInt lo;
    BigInt hi;
  };
  Interval interval(const std::map<std::string, Interval>& bounds) const;

  // Prints with minimal parentheses; parse(to_string(e)) evaluates like e.
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::int64_t value = 0;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Recursive-descent parser for the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := INT | IDENT | '-' factor | '(' expr ')'
// Identifiers match [a-zA-Z][a-zA-Z0-9_]*. Throws ParseError with the
// offending character position.
Expr parse_expr(std::string_view text);

}  // namespace smcpriv
