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

#include "smcpriv/expr.hpp"

#include <algorithm>
#include <cctype>

namespace smcpriv {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in +");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in -");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in *");
  return r;
}

std::int64_t checked_neg(std::int64_t a) {
  std::int64_t r;
  if (__builtin_sub_overflow(std::int64_t{0}, a, &r))
    throw Error("integer overflow in unary -");
  return r;
}

}  // namespace

Expr Expr::literal(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::neg(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->lhs = std::move(operand.node_);
  return Expr(std::move(n));
}

Expr Expr::add(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

Expr Expr::sub(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sub;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

Expr Expr::mul(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

std::int64_t Expr::eval(const std::map<std::string, std::int64_t>& env) const {
  switch (node_->kind) {
    case Kind::Literal:
      return node_->value;
    case Kind::Var: {
      auto it = env.find(node_->name);
      if (it == env.end()) throw Error("unbound variable: " + node_->name);
      return it->second;
    }
    case Kind::Neg:
      return checked_neg(lhs().eval(env));
    case Kind::Add:
      return checked_add(lhs().eval(env), rhs().eval(env));
    case Kind::Sub:
      return checked_sub(lhs().eval(env), rhs().eval(env));
    case Kind::Mul:
      return checked_mul(lhs().eval(env), rhs().eval(env));
  }
  throw Error("corrupt expression node");
}

BigInt Expr::eval_big(const std::map<std::string, BigInt>& env) const {
  switch (node_->kind) {
    case Kind::Literal:
      return BigInt(node_->value);
    case Kind::Var: {
      auto it = env.find(node_->name);
      if (it == env.end()) throw Error("unbound variable: " + node_->name);
      return it->second;
    }
    case Kind::Neg:
      return -lhs().eval_big(env);
    case Kind::Add:
      return lhs().eval_big(env) + rhs().eval_big(env);
    case Kind::Sub:
      return lhs().eval_big(env) - rhs().eval_big(env);
    case Kind::Mul:
      return lhs().eval_big(env) * rhs().eval_big(env);
  }
  throw Error("corrupt expression node");
}

std::set<std::string> Expr::free_vars() const {
  std::set<std::string> out;
  auto walk = [&out](auto&& self, const Node* n) -> void {
    if (n == nullptr) return;
    if (n->kind == Kind::Var) out.insert(n->name);
    self(self, n->lhs.get());
    self(self, n->rhs.get());
  };
  walk(walk, node_.get());
  return out;
}

Expr::Interval Expr::interval(
    const std::map<std::string, Interval>& bounds) const {
  switch (node_->kind) {
    case Kind::Literal:
      return {BigInt(node_->value), BigInt(node_->value)};
    case Kind::Var: {
      auto it = bounds.find(node_->name);
      if (it == bounds.end()) throw Error("unbound variable: " + node_->name);
      return it->second;
    }
    case Kind::Neg: {
      Interval a = lhs().interval(bounds);
      return {-a.hi, -a.lo};
    }
    case Kind::Add: {
      Interval a = lhs().interval(bounds);
      Interval b = rhs().interval(bounds);
      return {a.lo + b.lo, a.hi + b.hi};
    }
    case Kind::Sub: {
      Interval a = lhs().interval(bounds);
      Interval b = rhs().interval(bounds);
      return {a.lo - b.hi, a.hi - b.lo};
    }
    case Kind::Mul: {
      Interval a = lhs().interval(bounds);
      Interval b = rhs().interval(bounds);
      BigInt c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
      return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
  }
  throw Error("corrupt expression node");
}

namespace {

// Precedence: additive = 1, multiplicative = 2, atoms/unary = 3.
int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
      return 2;
    default:
      return 3;
  }
}

void print(const Expr& e, int parent_prec, bool rhs_of_noncommutative,
           std::string& out) {
  int prec = precedence(e.kind());
  bool parens =
      prec < parent_prec || (prec == parent_prec && rhs_of_noncommutative);
  if (parens) out.push_back('(');
  switch (e.kind()) {
    case Expr::Kind::Literal:
      out += std::to_string(e.value());
      break;
    case Expr::Kind::Var:
      out += e.name();
      break;
    case Expr::Kind::Neg:
      out.push_back('-');
      print(e.lhs(), 3, true, out);
      break;
    case Expr::Kind::Add:
      print(e.lhs(), 1, false, out);
      out.push_back('+');
      print(e.rhs(), 1, false, out);
      break;
    case Expr::Kind::Sub:
      print(e.lhs(), 1, false, out);
      out.push_back('-');
      print(e.rhs(), 1, true, out);
      break;
    case Expr::Kind::Mul:
      print(e.lhs(), 2, false, out);
      out.push_back('*');
      print(e.rhs(), 2, false, out);
      break;
  }
  if (parens) out.push_back(')');
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing input after expression", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (eat('+'))
        e = Expr::add(std::move(e), term());
      else if (eat('-'))
        e = Expr::sub(std::move(e), term());
      else
        return e;
    }
  }

  Expr term() {
    Expr e = factor();
    while (eat('*')) e = Expr::mul(std::move(e), factor());
    return e;
  }

  Expr factor() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return Expr::neg(factor());
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unknown token '") + c + "'", pos_);
  }

  Expr number() {
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int digit = text_[pos_] - '0';
      if (__builtin_mul_overflow(v, std::int64_t{10}, &v) ||
          __builtin_add_overflow(v, std::int64_t{digit}, &v))
        throw ParseError("integer literal too large", start);
      ++pos_;
    }
    return Expr::literal(v);
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    return Expr::var(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*this, 0, false, out);
  return out;
}

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace smcpriv
