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

#include "smcpriv/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace smcpriv {

using nlohmann::json;

std::uint64_t fnv1a_hash(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    fail(path, std::string("missing field '") + key + "'");
  return j.at(key);
}

Rational parse_probability(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(BigInt(s));
      return Rational(BigInt(s.substr(0, slash)),
                      BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
      fail(path, "cannot parse probability '" + s + "'");
    }
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!(v >= 0.0) || !std::isfinite(v))
      fail(path, "probability must be a finite non-negative number");
    return Rational(v);
  }
  fail(path, "probability must be a number or a 'p/q' string");
}

VarDomain parse_domain(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("interval")) {
    const json& iv = j.at("interval");
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number_integer() ||
        !iv[1].is_number_integer())
      fail(path, "interval must be [lo, hi] with integer endpoints");
    Value lo = iv[0].get<Value>();
    Value hi = iv[1].get<Value>();
    if (lo > hi) fail(path, "interval is empty");
    return VarDomain::interval(lo, hi);
  }
  if (j.is_object() && j.contains("set")) {
    const json& set = j.at("set");
    if (!set.is_array() || set.empty())
      fail(path, "set must be a non-empty array of integers");
    std::vector<Value> values;
    for (const json& v : set) {
      if (!v.is_number_integer()) fail(path, "set entries must be integers");
      values.push_back(v.get<Value>());
    }
    return VarDomain::explicit_set(std::move(values));
  }
  fail(path, "domain must be {\"interval\":[a,b]} or {\"set\":[...]}");
}

DiscreteDist parse_prior(const json& j, const VarDomain& domain,
                         const std::string& path) {
  const json& kind_j = require(j, "kind", path);
  if (!kind_j.is_string()) fail(path + ".kind", "must be a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "uniform") return uniform(domain);
  if (kind == "linear") {
    const auto& vals = domain.values();
    if (vals.front() != 1 ||
        vals.back() != static_cast<Value>(vals.size()))
      fail(path, "linear priors require the domain [1, n]");
    return linear(vals.back());
  }
  if (kind == "point") {
    const json& v = require(j, "value", path);
    if (!v.is_number_integer()) fail(path + ".value", "must be an integer");
    Value point = v.get<Value>();
    if (!domain.contains(point))
      fail(path + ".value", "lies outside the declared domain");
    return point_mass(point);
  }
  if (kind == "explicit") {
    const json& pmf = require(j, "pmf", path);
    if (!pmf.is_array() || pmf.empty())
      fail(path + ".pmf", "must be a non-empty array of [value, prob] pairs");
    std::vector<Tuple> support;
    std::vector<Rational> weights;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      const json& entry = pmf[i];
      const std::string epath = path + ".pmf[" + std::to_string(i) + "]";
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number_integer())
        fail(epath, "must be a [value, prob] pair");
      Value v = entry[0].get<Value>();
      if (!domain.contains(v)) fail(epath, "value outside the domain");
      support.push_back(Tuple{v});
      weights.push_back(parse_probability(entry[1], epath));
    }
    try {
      return DiscreteDist::from_weights(std::move(support),
                                        std::move(weights));
    } catch (const Error& e) {
      fail(path + ".pmf", e.what());
    }
  }
  fail(path + ".kind",
       "unknown prior kind '" + kind +
           "' (expected uniform|linear|point|explicit)");
}

PartyGroup parse_group(const json& j, const std::string& path,
                       bool may_be_empty) {
  PartyGroup group;
  if (!j.is_array()) fail(path, "must be an array of variable declarations");
  if (j.empty() && !may_be_empty) fail(path, "must not be empty");
  group.prior = DiscreteDist::unit();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& var = j[i];
    const std::string vpath = path + "[" + std::to_string(i) + "]";
    const json& name = require(var, "name", vpath);
    if (!name.is_string() || name.get<std::string>().empty())
      fail(vpath + ".name", "must be a non-empty string");
    group.names.push_back(name.get<std::string>());
    VarDomain dom = parse_domain(require(var, "domain", vpath),
                                 vpath + ".domain");
    DiscreteDist prior = parse_prior(require(var, "prior", vpath), dom,
                                     vpath + ".prior");
    group.prior = i == 0 ? prior : product(group.prior, prior);
    group.domains.push_back(std::move(dom));
  }
  return group;
}

GainSpec parse_gain(const json& j, const DomainSpec& target_domains,
                    const std::string& path) {
  std::vector<Tuple> secrets = enumerate_domain(target_domains);
  if (j.is_string()) {
    const std::string kind = j.get<std::string>();
    if (kind == "id") return GainSpec::identity(std::move(secrets));
    if (kind == "parity") return GainSpec::parity(std::move(secrets));
    fail(path, "unknown gain '" + kind + "' (expected id|parity|matrix)");
  }
  if (j.is_object()) {
    const json& guesses = require(j, "guesses", path);
    const json& matrix = require(j, "matrix", path);
    if (!guesses.is_array() || guesses.empty())
      fail(path + ".guesses", "must be a non-empty array");
    std::vector<std::string> labels;
    for (const json& g : guesses) {
      if (g.is_string())
        labels.push_back(g.get<std::string>());
      else
        labels.push_back(g.dump());
    }
    if (!matrix.is_array() || matrix.size() != labels.size())
      fail(path + ".matrix", "must have one row per guess");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t w = 0; w < matrix.size(); ++w) {
      const json& r = matrix[w];
      const std::string rpath = path + ".matrix[" + std::to_string(w) + "]";
      if (!r.is_array() || r.size() != secrets.size())
        fail(rpath, "row length must equal the target domain size " +
                        std::to_string(secrets.size()));
      std::vector<Rational> row;
      for (std::size_t x = 0; x < r.size(); ++x)
        row.push_back(
            parse_probability(r[x], rpath + "[" + std::to_string(x) + "]"));
      rows.push_back(std::move(row));
    }
    try {
      return GainSpec::explicit_matrix(std::move(labels), std::move(secrets),
                                       std::move(rows));
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  fail(path, "gain must be \"id\", \"parity\", or a matrix object");
}

ApproximationSpec parse_approximation(const json& j, const std::string& path) {
  const json& kind_j = require(j, "kind", path);
  if (!kind_j.is_string()) fail(path + ".kind", "must be a string");
  const std::string kind = kind_j.get<std::string>();
  std::string virtual_var = "phi";
  if (j.contains("virtual_var")) {
    if (!j.at("virtual_var").is_string())
      fail(path + ".virtual_var", "must be a string");
    virtual_var = j.at("virtual_var").get<std::string>();
  }
  VarDomain domain =
      parse_domain(require(j, "domain", path), path + ".domain");
  if (kind == "additive")
    return ApproximationSpec::additive(std::move(virtual_var),
                                       std::move(domain));
  if (kind == "mapped") {
    const json& h = require(j, "h", path);
    if (!h.is_string()) fail(path + ".h", "must be an expression string");
    try {
      return ApproximationSpec::mapped(parse_expr(h.get<std::string>()),
                                       std::move(virtual_var),
                                       std::move(domain));
    } catch (const Error& e) {
      fail(path + ".h", e.what());
    }
  }
  fail(path + ".kind", "expected additive|mapped");
}

}  // namespace

LoadedConfig parse_config(const json& doc) {
  LoadedConfig out;
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  out.config_hash = fnv1a_hash(doc.dump());

  const json& fn = require(doc, "function", "config");
  if (!fn.is_string()) fail("config.function", "must be an expression string");
  try {
    out.scenario.f = parse_expr(fn.get<std::string>());
  } catch (const ParseError& e) {
    fail("config.function", e.what());
  }

  const json& parties = require(doc, "parties", "config");
  out.scenario.attackers = parse_group(
      require(parties, "attackers", "config.parties"),
      "config.parties.attackers", false);
  out.scenario.targets =
      parse_group(require(parties, "targets", "config.parties"),
                  "config.parties.targets", false);
  if (parties.contains("spectators"))
    out.scenario.spectators = parse_group(
        parties.at("spectators"), "config.parties.spectators", true);

  out.scenario.gain = parse_gain(require(doc, "gain", "config"),
                                 out.scenario.targets.domains, "config.gain");

  const json& alpha = require(doc, "alpha", "config");
  try {
    if (alpha.is_string())
      out.scenario.order = EntropyOrder::parse(alpha.get<std::string>());
    else if (alpha.is_number())
      out.scenario.order = EntropyOrder::finite(alpha.get<double>());
    else
      fail("config.alpha", "must be a number or \"inf\"");
  } catch (const Error& e) {
    fail("config.alpha", e.what());
  }

  if (doc.contains("allow_bigint")) {
    if (!doc.at("allow_bigint").is_boolean())
      fail("config.allow_bigint", "must be a boolean");
    out.scenario.allow_bigint = doc.at("allow_bigint").get<bool>();
  }

  try {
    out.scenario.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (doc.contains("approximation")) {
    const json& approx_j = doc.at("approximation");
    ApproximationSpec approx =
        parse_approximation(approx_j, "config.approximation");
    for (const PartyGroup* g :
         {&out.scenario.attackers, &out.scenario.targets,
          &out.scenario.spectators}) {
      for (const std::string& n : g->names) {
        if (n == approx.virtual_var)
          fail("config.approximation.virtual_var",
               "collides with the party variable '" + n + "'");
      }
    }
    // Load-time overflow check for the randomized output.
    if (!out.scenario.allow_bigint) {
      std::map<std::string, Expr::Interval> bounds;
      for (auto& [name, iv] : scenario_bounds(out.scenario))
        bounds[name] = iv;
      Expr::Interval o_iv = out.scenario.f.interval(bounds);
      const auto& phis = approx.phi_domain.values();
      Expr::Interval out_iv;
      if (approx.kind == ApproximationSpec::Kind::Additive) {
        out_iv = {o_iv.lo + phis.front(), o_iv.hi + phis.back()};
      } else {
        std::map<std::string, Expr::Interval> h_bounds;
        h_bounds["o"] = o_iv;
        h_bounds[approx.virtual_var] = {BigInt(phis.front()),
                                        BigInt(phis.back())};
        out_iv = approx.h->interval(h_bounds);
      }
      const BigInt lo = std::numeric_limits<Value>::min();
      const BigInt hi = std::numeric_limits<Value>::max();
      if (out_iv.lo < lo || out_iv.hi > hi)
        fail("config.approximation",
             "randomized outputs may overflow 64-bit integers; set "
             "allow_bigint");
    }

    std::vector<json> phi_specs;
    if (approx_j.contains("pi_phi")) phi_specs.push_back(approx_j.at("pi_phi"));
    if (approx_j.contains("pi_phis")) {
      const json& list = approx_j.at("pi_phis");
      if (!list.is_array())
        fail("config.approximation.pi_phis", "must be an array");
      for (const json& p : list) phi_specs.push_back(p);
    }
    for (std::size_t i = 0; i < phi_specs.size(); ++i) {
      out.pi_phis.push_back(
          parse_prior(phi_specs[i], approx.phi_domain,
                      "config.approximation.pi_phi[" + std::to_string(i) +
                          "]"));
    }
    out.approximation = std::move(approx);
  }

  if (doc.contains("optimize")) {
    const json& opt = doc.at("optimize");
    if (!opt.is_object()) fail("config.optimize", "must be an object");
    if (opt.contains("delta")) {
      if (!opt.at("delta").is_number_integer() ||
          opt.at("delta").get<Value>() < 1)
        fail("config.optimize.delta", "must be a positive integer");
      out.delta_max = opt.at("delta").get<Value>();
    }
    if (opt.contains("epsilon")) {
      if (!opt.at("epsilon").is_number() ||
          !(opt.at("epsilon").get<double>() > 0))
        fail("config.optimize.epsilon", "must be a positive real");
      out.epsilon = opt.at("epsilon").get<double>();
    }
    if (opt.contains("seed")) {
      if (!opt.at("seed").is_number_unsigned())
        fail("config.optimize.seed", "must be a non-negative integer");
      out.knobs.seed = opt.at("seed").get<std::uint64_t>();
    }
    if (opt.contains("starts")) {
      if (!opt.at("starts").is_number_integer() ||
          opt.at("starts").get<int>() < 0)
        fail("config.optimize.starts", "must be a non-negative integer");
      out.knobs.n_starts = opt.at("starts").get<int>();
    }
    if (opt.contains("hops")) {
      if (!opt.at("hops").is_number_integer() || opt.at("hops").get<int>() < 0)
        fail("config.optimize.hops", "must be a non-negative integer");
      out.knobs.n_hops = opt.at("hops").get<int>();
    }
    if (opt.contains("max_iterations")) {
      if (!opt.at("max_iterations").is_number_integer() ||
          opt.at("max_iterations").get<int>() < 1)
        fail("config.optimize.max_iterations", "must be a positive integer");
      out.knobs.max_iterations = opt.at("max_iterations").get<int>();
    }
  }

  if (doc.contains("sweep")) {
    const json& sweep = doc.at("sweep");
    const json& alphas = require(sweep, "alphas", "config.sweep");
    if (!alphas.is_array() || alphas.empty())
      fail("config.sweep.alphas", "must be a non-empty array");
    for (const json& a : alphas) {
      if (!a.is_number() || !(a.get<double>() > 1.0))
        fail("config.sweep.alphas", "entries must be finite orders > 1");
      out.sweep_alphas.push_back(a.get<double>());
    }
  }

  return out;
}

LoadedConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace smcpriv
