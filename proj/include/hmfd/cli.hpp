#pragma once

// Command implementations behind the hmfd executable, kept here so tests can drive them.

#include "hmfd/random_forms.hpp"
#include "hmfd/serialize.hpp"

#include <atomic>
#include <fstream>
#include <thread>

namespace hmfd::cli {

enum ExitCode { kOk = 0, kUsage = 1, kPrecision = 2, kFalsified = 3 };

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t column)
      : std::invalid_argument("parse error at column " + std::to_string(column + 1) + ": " + msg), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

struct OpSpec {
  enum class Kind { T, diamond, VP, hasse } kind = Kind::hasse;
  std::int64_t a = 1, b = 0, c = 1;  // ideal argument, unvalidated
};

/// Parses "T q=[a,b,c]", "diamond q=[a,b,c]", "VP P=[a,b,c]" or "hasse".
inline OpSpec parse_op_spec(const std::string& s) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto expect = [&](char ch) {
    skip();
    if (i >= s.size() || s[i] != ch) throw ParseError(std::string("expected '") + ch + "'", i);
    ++i;
  };
  auto integer = [&] {
    skip();
    std::size_t start = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && s[start] == '-')) throw ParseError("expected an integer", start);
    try {
      return std::stoll(s.substr(start, i - start));
    } catch (const std::out_of_range&) {
      throw ParseError("integer out of range", start);
    }
  };
  skip();
  std::size_t start = i;
  while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
  const std::string word = s.substr(start, i - start);
  OpSpec op;
  char arg = 0;
  if (word == "T") {
    op.kind = OpSpec::Kind::T;
    arg = 'q';
  } else if (word == "diamond") {
    op.kind = OpSpec::Kind::diamond;
    arg = 'q';
  } else if (word == "VP") {
    op.kind = OpSpec::Kind::VP;
    arg = 'P';
  } else if (word == "hasse") {
    op.kind = OpSpec::Kind::hasse;
  } else {
    throw ParseError("expected one of T, diamond, VP, hasse", start);
  }
  if (arg) {
    expect(arg);
    expect('=');
    expect('[');
    op.a = integer();
    expect(',');
    op.b = integer();
    expect(',');
    op.c = integer();
    expect(']');
  }
  skip();
  if (i != s.size()) throw ParseError("unexpected trailing input", i);
  return op;
}

/// Field, class group and (optionally) the character table over F_{p^m}.
inline json cmd_field_info(std::int64_t D, std::optional<std::int64_t> p, std::optional<int> m) {
  const QuadraticField F = make_field(D);
  auto G = narrow_class_group(F);
  if (!p) return field_info_json(F, G, nullptr);
  const std::int64_t ell = p.value();
  if (!is_prime(ell)) throw std::invalid_argument("p = " + std::to_string(ell) + " is not prime");
  int deg = m.value_or(minimal_degree_for_exponent(ell, G->exponent()));
  auto K = gf_make(ell, deg);
  auto chars = characters_of(G, K);
  json out = field_info_json(F, G, &chars);
  out["coefficient_field"] = json{{"p", K->characteristic()}, {"m", deg}, {"modulus", K->modulus()}};
  return out;
}

struct FormSpec {
  std::int64_t D = 3, p = 7;
  std::optional<int> m;
  std::int64_t B = 200;
  int phi1 = 0, phi2 = 0;
  ConstantMode constant_mode = ConstantMode::zero;
  std::optional<json> form;  // explicit expansion instead of an Eisenstein series
};

/// Builds the form and applies one operator; returns input and output expansions.
inline json cmd_apply(const FormSpec& spec, const std::string& op_text) {
  OpSpec op = parse_op_spec(op_text);
  if (!is_prime(spec.p)) throw std::invalid_argument("p = " + std::to_string(spec.p) + " is not prime");
  const QuadraticField F = make_field(spec.D);
  auto G = narrow_class_group(F);
  auto K = gf_make(spec.p, spec.m.value_or(minimal_degree_for_exponent(spec.p, G->exponent())));
  auto chars = characters_of(G, K);
  std::optional<AdelicQExpansion> f;
  if (spec.form) {
    f = qexp_from_json(G, K, *spec.form);
  } else {
    if (spec.phi1 < 0 || spec.phi1 >= G->order() || spec.phi2 < 0 || spec.phi2 >= G->order())
      throw std::invalid_argument("character index out of range");
    f = eisenstein(chars[spec.phi1], chars[spec.phi2], spec.B, spec.constant_mode);
  }
  std::optional<AdelicQExpansion> g;
  json op_json;
  switch (op.kind) {
    case OpSpec::Kind::hasse:
      g = hasse_lift(*f);
      op_json = "hasse";
      break;
    case OpSpec::Kind::T: {
      IdealHNF q = make_ideal(F, op.a, op.b, op.c);
      g = apply_T(*f, as_prime(F, q));
      op_json = json{{"T", to_json(q)}};
      break;
    }
    case OpSpec::Kind::diamond: {
      IdealHNF q = make_ideal(F, op.a, op.b, op.c);
      g = apply_diamond(*f, q);
      op_json = json{{"diamond", to_json(q)}};
      break;
    }
    case OpSpec::Kind::VP: {
      IdealHNF P = make_ideal(F, op.a, op.b, op.c);
      g = apply_VP_direct(*f, P);
      op_json = json{{"VP", to_json(P)}};
      break;
    }
  }
  return json{{"D", spec.D}, {"p", spec.p}, {"operator", op_json}, {"input", to_json(*f)}, {"output", to_json(*g)}};
}

inline int exit_code_for(const std::vector<Status>& statuses) {
  int code = kOk;
  for (Status s : statuses) {
    if (s == Status::falsified) return kFalsified;
    if (s == Status::precision_exhausted) code = kPrecision;
  }
  return code;
}

struct JobResult {
  std::vector<std::string> lines;  // one JSON object per report
  std::vector<Status> statuses;
};

/// Runs each config (possibly concurrently) and returns results in input order.
/// Invalid configs produce an inline error object and count as usage errors.
inline std::vector<JobResult> run_grid(const std::vector<json>& configs, const ExperimentConfig& defaults, int jobs,
                                       bool* usage_error) {
  std::vector<JobResult> results(configs.size());
  std::vector<int> bad(configs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        ExperimentConfig cfg = config_from_json(configs[i], defaults);
        for (const auto& rep : run_experiment(cfg)) {
          results[i].lines.push_back(to_json(rep).dump());
          results[i].statuses.push_back(rep.status);
        }
      } catch (const std::exception& e) {
        bad[i] = 1;
        results[i].lines.push_back(json{{"config", configs[i]}, {"status", "error"}, {"error", e.what()}}.dump());
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (usage_error) *usage_error = std::find(bad.begin(), bad.end(), 1) != bad.end();
  return results;
}

/// Reads a grid file: a JSON array of configs, a single config object, or JSON lines.
inline std::vector<json> read_grid(const std::string& text) {
  std::vector<json> out;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return out;
  if (text[first] == '[') {
    json j = json::parse(text);
    for (const auto& x : j) out.push_back(x);
    return out;
  }
  try {
    out.push_back(json::parse(text));
    return out;
  } catch (const json::parse_error&) {
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(json::parse(line));
  }
  return out;
}

struct VPCheckSummary {
  std::size_t forms = 0;
  std::size_t comparisons = 0;
  std::size_t recursion_failures = 0;
  std::size_t lemma_checks = 0;
  std::size_t lemma_failures = 0;
  std::string first_failure;
};

/// Recursion-versus-closed-form and commutation-lemma checks on random isotypic forms:
/// every squarefree P | p, both orders of its primes, and every prime q | p.
inline VPCheckSummary check_vp_corpus(std::int64_t D, std::int64_t p, std::optional<int> m, std::int64_t B,
                                      std::size_t count, std::uint64_t seed) {
  const QuadraticField F = make_field(D);
  auto G = narrow_class_group(F);
  auto K = gf_make(p, m.value_or(minimal_degree_for_exponent(p, G->exponent())));
  auto chars = characters_of(G, K);
  const auto primes = primes_above(F, p);
  const auto labels = squarefree_divisors(F, primes);
  const auto ideals = enumerate_ideals(F, B);
  std::mt19937_64 rng(seed);
  VPCheckSummary sum;
  for (std::size_t n = 0; n < count; ++n) {
    AdelicQExpansion f = random_isotypic_form(chars, ideals, B, rng);
    ++sum.forms;
    for (const auto& P : labels) {
      AdelicQExpansion direct = apply_VP_direct(f, P);
      auto order = frobenius_support(F, P, p);
      for (int pass = 0; pass < (order.size() > 1 ? 2 : 1); ++pass) {
        if (pass == 1) std::reverse(order.begin(), order.end());
        AdelicQExpansion rec = apply_VP_recursive(f, order);
        ++sum.comparisons;
        if (rec.weight() != direct.weight() || !qexp_equal(rec, direct, rec.precision())) {
          ++sum.recursion_failures;
          if (sum.first_failure.empty()) {
            std::ostringstream os;
            os << "V_P recursion differs from closed form for P = " << P << " on form " << n;
            sum.first_failure = os.str();
          }
        }
      }
      for (const auto& q : primes) {
        ++sum.lemma_checks;
        std::string witness;
        if (!check_UV_lemma(f, q, P, &witness)) {
          ++sum.lemma_failures;
          if (sum.first_failure.empty()) {
            std::ostringstream os;
            os << "commutation lemma fails for P = " << P << ", q = " << q.ideal << ": " << witness;
            sum.first_failure = os.str();
          }
        }
      }
    }
  }
  return sum;
}

}  // namespace hmfd::cli
