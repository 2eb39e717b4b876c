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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "smcpriv/expr.hpp"
#include "test_util.hpp"

using namespace smcpriv;

TEST_CASE("parse recovers the expected free variables") {
  Expr e = parse_expr("x*(2*y+z)+2*z");
  CHECK(e.free_vars() == std::set<std::string>{"x", "y", "z"});

  Expr zero = parse_expr("0");
  CHECK(zero.kind() == Expr::Kind::Literal);
  CHECK(zero.free_vars().empty());

  Expr e4 = parse_expr("x*(3*y-5*z)+2*z");
  CHECK(e4.free_vars() == std::set<std::string>{"x", "y", "z"});

  CHECK(parse_expr("7").free_vars().empty());
  CHECK(parse_expr("a+a").free_vars() == std::set<std::string>{"a"});
}

TEST_CASE("eval is exact on the worked examples") {
  CHECK(parse_expr("x*(2*y+z)+2*z").eval({{"x", 15}, {"y", 1}, {"z", 1}}) ==
        47);
  CHECK(parse_expr("x").eval({{"x", -3}}) == -3);
  CHECK(parse_expr("x*(3*y-5*z)+2*z").eval({{"x", 5}, {"y", 1}, {"z", 1}}) ==
        -8);
  CHECK(parse_expr("-x*y").eval({{"x", 3}, {"y", 4}}) == -12);
  CHECK(parse_expr("x--2").eval({{"x", 1}}) == 3);
}

TEST_CASE("eval reports unbound variables") {
  CHECK_THROWS_AS(parse_expr("x+y").eval({{"x", 1}}), Error);
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_AS(parse_expr("x+"), ParseError);
  CHECK_THROWS_AS(parse_expr("(x+1"), ParseError);
  CHECK_THROWS_AS(parse_expr("x$y"), ParseError);
  CHECK_THROWS_AS(parse_expr("x/2"), ParseError);
  CHECK_THROWS_AS(parse_expr(""), ParseError);
  try {
    parse_expr("x+%");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("64-bit evaluation detects overflow; big path widens") {
  Expr big = parse_expr("x*x");
  std::int64_t huge = std::int64_t{1} << 62;
  CHECK_THROWS_AS(big.eval({{"x", huge}}), Error);
  BigInt expected = BigInt(huge) * huge;
  CHECK(big.eval_big({{"x", BigInt(huge)}}) == expected);
}

TEST_CASE("interval analysis brackets expression values") {
  Expr e = parse_expr("x*(3*y-5*z)+2*z");
  std::map<std::string, Expr::Interval> bounds{
      {"x", {BigInt(1), BigInt(30)}},
      {"y", {BigInt(1), BigInt(30)}},
      {"z", {BigInt(1), BigInt(30)}},
  };
  Expr::Interval iv = e.interval(bounds);
  // node-wise bounds: 3y-5z in [-147, 85], x*(..) in [-4410, 2550], +2z
  CHECK(iv.hi == 2610);
  CHECK(iv.lo == -4408);
  // conservative: contains every reachable value
  CHECK(iv.lo <= -4350);
  CHECK(iv.hi >= 2552);
}

TEST_CASE("print-parse round trip preserves evaluation") {
  std::mt19937_64 rng(20260809);
  std::vector<std::string> vars{"x", "y", "z"};
  std::uniform_int_distribution<Value> val(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    Expr e = testutil::random_expr(rng, vars, 4);
    Expr reparsed = parse_expr(e.to_string());
    std::map<std::string, Value> env{
        {"x", val(rng)}, {"y", val(rng)}, {"z", val(rng)}};
    CHECK(e.eval(env) == reparsed.eval(env));
  }
}

TEST_CASE("eval is a pure function of its inputs") {
  Expr e = parse_expr("x*(2*y+z)+2*z");
  std::map<std::string, Value> env{{"x", 7}, {"y", -2}, {"z", 5}};
  Value first = e.eval(env);
  for (int i = 0; i < 10; ++i) CHECK(e.eval(env) == first);
}
