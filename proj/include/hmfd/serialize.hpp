#pragma once

// JSON encodings. Ideals are [a, b, c]; field elements are coefficient lists over F_p,
// constant coefficient first; expansions list only nonzero coefficients, in canonical
// ideal order.

#include "hmfd/experiment.hpp"

#include <json.hpp>

namespace hmfd {

using json = nlohmann::ordered_json;

inline json to_json(const IdealHNF& I) { return json::array({I.a, I.b, I.c}); }

inline IdealHNF ideal_from_json(const QuadraticField& F, const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("ideal must be a JSON array [a, b, c]");
  return make_ideal(F, j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>());
}

inline json to_json(const GFElement& x) { return json(x.coeffs()); }

inline GFElement gf_from_json(const GFContext& K, const json& j) {
  if (j.is_number_integer()) return K.from_int(j.get<std::int64_t>());
  if (!j.is_array()) throw std::invalid_argument("field element must be an integer or a coefficient list");
  return K.from_coeffs(j.get<std::vector<std::int64_t>>());
}

inline json to_json(const std::vector<GFElement>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline json to_json(const GFMatrix& M) {
  json out = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
    out.push_back(row);
  }
  return out;
}

inline json to_json(const AdelicQExpansion& f) {
  json coeffs = json::array();
  for (const auto& [r, v] : f.coeffs()) coeffs.push_back(json::array({to_json(r), to_json(v)}));
  return json{{"weight", f.weight()},
              {"nebentypus", to_json(f.nebentypus().values())},
              {"precision", f.precision()},
              {"constant", to_json(f.constant().coeffs())},
              {"coeffs", coeffs}};
}

inline AdelicQExpansion qexp_from_json(std::shared_ptr<const NarrowClassGroup> G, std::shared_ptr<const GFContext> K,
                                       const json& j) {
  std::vector<GFElement> neb;
  for (const auto& x : j.at("nebentypus")) neb.push_back(gf_from_json(*K, x));
  Character eps(G, K, std::move(neb));
  AdelicQExpansion f(j.at("weight").get<int>(), eps, j.at("precision").get<std::int64_t>());
  if (j.contains("constant")) {
    std::vector<GFElement> c;
    for (const auto& x : j.at("constant")) c.push_back(gf_from_json(*K, x));
    f.set_constant(GroupRingVector(G, std::move(c)));
  }
  if (j.contains("coeffs"))
    for (const auto& entry : j.at("coeffs"))
      f.set_coeff(ideal_from_json(G->field(), entry.at(0)), gf_from_json(*K, entry.at(1)));
  return f;
}

inline json to_json(const PrimeIdeal& P) {
  return json{{"ideal", to_json(P.ideal)},
              {"rational_prime", P.rational_prime},
              {"residue_degree", P.residue_degree},
              {"ramified", P.ramified}};
}

inline json field_info_json(const QuadraticField& F, const std::shared_ptr<const NarrowClassGroup>& G,
                            const std::vector<Character>* chars) {
  const FieldElement& u = F.fundamental_unit();
  json reps = json::array();
  for (const auto& r : G->reps()) reps.push_back(to_json(r));
  json table = json::array();
  for (const auto& row : G->table()) table.push_back(row);
  json orders = json::array();
  for (int i = 0; i < G->order(); ++i) orders.push_back(G->element_order(i));
  json out{{"D", F.D()},
           {"disc", F.disc()},
           {"omega", F.half_integral_basis() ? "(1+sqrt(D))/2" : "sqrt(D)"},
           {"fundamental_unit", {{"x", u.x().str()}, {"y", u.y().str()}, {"text", u.str()}}},
           {"unit_norm", F.unit_norm()},
           {"narrow_class_number", G->order()},
           {"exponent", G->exponent()},
           {"class_reps", reps},
           {"element_orders", orders},
           {"composition_table", table}};
  if (chars) {
    json ct = json::array();
    for (const auto& c : *chars) ct.push_back(to_json(c.values()));
    out["characters"] = ct;
  }
  return out;
}

inline json to_json(const DoublingReport& r) {
  const ExperimentConfig& c = r.config;
  json primes = json::array();
  for (const auto& pr : r.primes) {
    json jp{{"prime", to_json(pr.prime)}};
    if (pr.lambda.context()) jp["lambda"] = to_json(pr.lambda);
    if (pr.eps.context()) jp["eps"] = to_json(pr.eps);
    if (pr.matrix) {
      jp["matrix"] = to_json(*pr.matrix);
      jp["annihilator_ok"] = pr.annihilator_ok;
    }
    if (!pr.roots.empty()) {
      jp["roots"] = to_json(pr.roots);
      jp["double_root"] = pr.double_root;
      jp["alpha"] = to_json(*pr.alpha);
    }
    if (pr.wp.action) {
      json basis = json::array();
      for (const auto& v : pr.wp.basis) basis.push_back(to_json(v));
      jp["W_p"] = json{{"dim", pr.wp.dim},
                       {"basis", basis},
                       {"action", to_json(*pr.wp.action)},
                       {"minpoly", to_json(pr.wp.minpoly)},
                       {"minpoly_text", poly_str(pr.wp.minpoly)},
                       {"minpoly_matches", pr.wp.minpoly_matches},
                       {"semisimple", pr.wp.semisimple}};
    } else if (pr.wp.dim) {
      jp["W_p"] = json{{"dim", pr.wp.dim}};
    }
    primes.push_back(jp);
  }
  json labels = json::array();
  for (const auto& l : r.basis_labels) labels.push_back(to_json(l));
  json attempts = json::array();
  for (const auto& a : r.attempts) attempts.push_back(json{{"B", a.B}, {"m", a.m}, {"outcome", a.outcome}});
  auto opt = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  return json{{"D", c.D},
              {"p", c.p},
              {"m", r.m},
              {"precision", r.precision},
              {"eigenform",
               {{"type", "eisenstein"}, {"phi1", c.phi1}, {"phi2", c.phi2}, {"constant_mode", to_string(c.constant_mode)}}},
              {"root_choice", r.root_choice},
              {"narrow_class_number", r.class_number},
              {"s", r.s},
              {"basis_labels", labels},
              {"rank", r.rank},
              {"primes", primes},
              {"matrices_commute", opt(r.matrices_commute)},
              {"doubling_recursion_ok", opt(r.doubling_recursion_ok)},
              {"closure_equals_W", opt(r.closure_equals_W)},
              {"status", to_string(r.status)},
              {"stage", r.stage},
              {"witness", r.witness},
              {"attempts", attempts}};
}

inline ExperimentConfig config_from_json(const json& j, ExperimentConfig base = {}) {
  ExperimentConfig c = base;
  if (j.contains("D")) c.D = j.at("D").get<std::int64_t>();
  if (j.contains("p")) c.p = j.at("p").get<std::int64_t>();
  if (j.contains("m") && !j.at("m").is_null()) c.m = j.at("m").get<int>();
  if (j.contains("B") && !j.at("B").is_null()) c.B = j.at("B").get<std::int64_t>();
  if (j.contains("phi1")) c.phi1 = j.at("phi1").get<int>();
  if (j.contains("phi2")) c.phi2 = j.at("phi2").get<int>();
  if (j.contains("constant_mode")) c.constant_mode = constant_mode_from_string(j.at("constant_mode").get<std::string>());
  if (j.contains("roots")) c.roots = root_choice_from_string(j.at("roots").get<std::string>());
  if (j.contains("reverse_primes")) c.reverse_primes = j.at("reverse_primes").get<bool>();
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::vector<std::string> known{"D",    "p",    "m",    "B",     "phi1",           "phi2",
                                                "constant_mode", "roots", "reverse_primes", "out"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("unknown config key '" + it.key() + "'");
  }
  return c;
}

}  // namespace hmfd
