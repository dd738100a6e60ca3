#pragma once

// End-to-end doubling experiment: field, class group, characters, Eisenstein eigenform,
// W and its operator matrices, the subspaces W_q, and the closure of h*f.

#include "hmfd/doubling.hpp"

namespace hmfd {

enum class RootChoice { first, second, both };

inline std::string to_string(RootChoice r) {
  switch (r) {
    case RootChoice::first:
      return "first";
    case RootChoice::second:
      return "second";
    case RootChoice::both:
      return "both";
  }
  return "first";
}

inline RootChoice root_choice_from_string(const std::string& s) {
  if (s == "first") return RootChoice::first;
  if (s == "second") return RootChoice::second;
  if (s == "both") return RootChoice::both;
  throw std::invalid_argument("unknown root choice '" + s + "' (expected first, second or both)");
}

struct ExperimentConfig {
  std::int64_t D = 3;
  std::int64_t p = 7;
  std::optional<int> m;           // coefficient field degree; default: least hosting the characters
  std::optional<std::int64_t> B;  // starting precision; default 2 N(rad p)^2
  int phi1 = 0;
  int phi2 = 0;
  ConstantMode constant_mode = ConstantMode::zero;
  RootChoice roots = RootChoice::first;
  bool reverse_primes = false;  // process the primes above p in reverse order
  int max_precision_doublings = 6;
  int max_degree = 12;
};

enum class Status { verified, falsified, precision_exhausted };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::verified:
      return "verified";
    case Status::falsified:
      return "falsified";
    case Status::precision_exhausted:
      return "precision_exhausted";
  }
  return "falsified";
}

struct WpData {
  std::size_t dim = 0;
  std::vector<std::vector<GFElement>> basis;  // in W coordinates
  std::optional<GFMatrix> action;             // T_q on W_q (2 x 2)
  GFPoly minpoly;
  bool minpoly_matches = false;
  bool semisimple = false;
};

struct PrimeReport {
  PrimeIdeal prime;
  GFElement lambda;
  GFElement eps;
  std::optional<GFMatrix> matrix;
  bool annihilator_ok = false;
  std::vector<GFElement> roots;  // both roots of X^2 - lambda X + eps, sorted
  bool double_root = false;
  std::optional<GFElement> alpha;  // the chosen root
  WpData wp;
};

struct Attempt {
  std::int64_t B = 0;
  int m = 0;
  std::string outcome;
};

struct DoublingReport {
  ExperimentConfig config;
  std::shared_ptr<const GFContext> field;  // keeps the coefficient field alive
  int m = 0;
  std::int64_t precision = 0;
  std::string root_choice;  // "first" or "second"
  int class_number = 0;
  int s = 0;
  std::vector<IdealHNF> basis_labels;
  std::size_t rank = 0;
  std::vector<PrimeReport> primes;
  std::optional<bool> matrices_commute;
  std::optional<bool> closure_equals_W;
  std::optional<bool> doubling_recursion_ok;
  Status status = Status::verified;
  std::string stage;
  std::string witness;
  std::vector<Attempt> attempts;
};

namespace detail {

/// Subspaces Z_P = span{e_Q : Q | P} satisfy Z_{Pq} = Z_P + M_q Z_P with doubled dimension.
inline std::optional<std::string> check_doubling_recursion(const QuadraticField& F, const WBasis& W,
                                                           const std::vector<GFMatrix>& Ms) {
  const GFContext* K = W.matrix.context();
  const std::size_t n = W.labels.size();
  auto span_of = [&](const IdealHNF& P) {
    std::vector<std::vector<GFElement>> cols;
    for (std::size_t j = 0; j < n; ++j) {
      if (!ideal_divides(F, W.labels[j], P)) continue;
      std::vector<GFElement> e(n, K->zero());
      e[j] = K->one();
      cols.push_back(std::move(e));
    }
    return cols;
  };
  for (const auto& P : W.labels) {
    for (std::size_t k = 0; k < W.primes.size(); ++k) {
      if (ideal_divides(F, W.primes[k].ideal, P)) continue;
      auto ZP = span_of(P);
      auto grown = ZP;
      for (const auto& v : ZP) grown.push_back(Ms[k] * v);
      auto target = span_of(ideal_mul(F, P, W.primes[k].ideal));
      GFMatrix G = GFMatrix::from_columns(K, n, grown), T = GFMatrix::from_columns(K, n, target);
      if (rank(G) != 2 * ZP.size() || !same_column_space(G, T)) {
        std::ostringstream os;
        os << "Z_P + T_q Z_P != Z_Pq for P = " << P << ", q = " << W.primes[k].ideal;
        return os.str();
      }
    }
  }
  return std::nullopt;
}

/// The forms T_S (h f) = prod_{q in S} T_q^{(p)} (h f) for all subsets S, expressed in the
/// basis of W. W is T-stable, so when these 2^s vectors span W the closure of h f is W.
inline std::optional<std::string> check_closure(const AdelicQExpansion& f, const WBasis& W) {
  const GFContext* K = W.matrix.context();
  const int p = static_cast<int>(K->characteristic());
  const std::size_t s = W.primes.size(), n = W.labels.size();
  std::vector<std::vector<GFElement>> coords;
  for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
    AdelicQExpansion g = hasse_lift(f);
    for (std::size_t k = 0; k < s; ++k)
      if (mask >> k & 1) g = apply_T(g, W.primes[k], p);
    std::vector<const AdelicQExpansion*> all = W.form_ptrs();
    all.push_back(&g);
    Coordinates c = shared_coordinates(all, g.precision());
    SolveResult sol = solve(coordinate_matrix(W.form_ptrs(), c), coordinate_vector(g, c));
    if (sol.status == SolveStatus::underdetermined)
      throw PrecisionError("closure: basis of W is not independent on ideals of norm <= " +
                           std::to_string(g.precision()));
    if (sol.status == SolveStatus::inconsistent) return "a word in the T_q applied to h f leaves W";
    coords.push_back(sol.x);
  }
  if (rank(GFMatrix::from_columns(K, n, coords)) != n) return "the closure of h f is smaller than W";
  return std::nullopt;
}

inline std::int64_t default_precision(const QuadraticField& F, std::int64_t p) {
  std::int64_t rad = 1;
  for (const auto& q : primes_above(F, p)) rad *= q.norm();
  return 2 * rad * rad;
}

/// One pass at fixed precision and field; throws PrecisionError or NeedsExtension.
inline DoublingReport run_once(const ExperimentConfig& cfg, std::int64_t B, int m, int m_chars, int root_index) {
  DoublingReport rep;
  rep.config = cfg;
  rep.m = m;
  rep.precision = B;
  rep.root_choice = root_index == 0 ? "first" : "second";
  std::string& stage = rep.stage;
  try {
    stage = "field";
    const QuadraticField F = make_field(cfg.D);
    stage = "class_group";
    auto G = narrow_class_group(F);
    rep.class_number = G->order();
    stage = "characters";
    auto K0 = gf_make(cfg.p, m_chars);
    auto K = m == m_chars ? K0 : gf_make(cfg.p, m);
    rep.field = K;
    auto chars = characters_of(G, K0);
    if (cfg.phi1 < 0 || cfg.phi1 >= G->order() || cfg.phi2 < 0 || cfg.phi2 >= G->order())
      throw std::invalid_argument("character index out of range: the class group has " +
                                  std::to_string(G->order()) + " characters");
    Character phi1 = chars[cfg.phi1], phi2 = chars[cfg.phi2];
    if (K != K0) {
      GFEmbedding emb(K0, K);
      phi1 = embed_character(phi1, emb);
      phi2 = embed_character(phi2, emb);
    }
    stage = "eigenform";
    AdelicQExpansion f = eisenstein(phi1, phi2, B, cfg.constant_mode);
    std::vector<PrimeIdeal> primes = primes_above(F, cfg.p);
    rep.s = static_cast<int>(primes.size());
    std::vector<std::size_t> order(primes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = cfg.reverse_primes ? order.size() - 1 - i : i;

    stage = "verify_eigenform";
    rep.primes.resize(primes.size());
    auto checks = verify_eigenform(f, primes);
    for (std::size_t i : order) {
      PrimeReport& pr = rep.primes[i];
      pr.prime = primes[i];
      pr.eps = f.nebentypus()(primes[i].ideal);
      if (!checks[i].is_eigen) {
        rep.status = Status::falsified;
        std::ostringstream os;
        os << "f is not a T_q eigenform for q = " << primes[i].ideal << ": " << checks[i].witness;
        rep.witness = os.str();
        return rep;
      }
      pr.lambda = *checks[i].lambda;
    }

    stage = "build_W";
    WBasis W = build_W(f);
    rep.basis_labels = W.labels;
    rep.rank = W.rank;

    stage = "matrix_of_T";
    std::vector<GFMatrix> Ms(primes.size());
    for (std::size_t i : order) {
      Ms[i] = matrix_of_T(W, primes[i]);
      rep.primes[i].matrix = Ms[i];
    }

    stage = "check_annihilator";
    for (std::size_t i : order) {
      PrimeReport& pr = rep.primes[i];
      pr.annihilator_ok = check_annihilator(Ms[i], pr.lambda, pr.eps);
      if (!pr.annihilator_ok) {
        rep.status = Status::falsified;
        std::ostringstream os;
        os << "T_q matrix is not annihilated by X^2 - lambda X + eps for q = " << pr.prime.ideal;
        rep.witness = os.str();
        return rep;
      }
    }
    bool commute = true;
    for (std::size_t i = 0; i < Ms.size(); ++i)
      for (std::size_t j = i + 1; j < Ms.size(); ++j)
        if (!(Ms[i] * Ms[j] == Ms[j] * Ms[i])) commute = false;
    rep.matrices_commute = commute;
    if (!commute) {
      rep.status = Status::falsified;
      rep.witness = "the T_q matrices for distinct q above p do not commute";
      return rep;
    }

    stage = "roots";
    for (std::size_t i : order) {
      PrimeReport& pr = rep.primes[i];
      QuadraticRoots qr = quadratic_roots(pr.lambda, pr.eps);
      if (!qr.split)
        throw NeedsExtension("X^2 - lambda X + eps does not split over F_" + std::to_string(K->order()),
                             qr.needed_degree);
      pr.roots = qr.roots;
      pr.double_root = qr.double_root;
      pr.alpha = qr.roots[root_index];
    }

    stage = "build_Wp";
    for (std::size_t i : order) {
      PrimeReport& pr = rep.primes[i];
      std::vector<GFMatrix> others;
      std::vector<GFElement> alphas;
      for (std::size_t j = 0; j < primes.size(); ++j) {
        if (j == i) continue;
        others.push_back(Ms[j]);
        alphas.push_back(*rep.primes[j].alpha);
      }
      pr.wp.basis = build_Wp(others, alphas, W.labels.size(), K.get());
      pr.wp.dim = pr.wp.basis.size();
      if (pr.wp.dim != 2) {
        rep.status = Status::falsified;
        std::ostringstream os;
        os << "dim W_q = " << pr.wp.dim << " for q = " << pr.prime.ideal;
        rep.witness = os.str();
        return rep;
      }
      stage = "minpoly";
      pr.wp.action = restricted_action(Ms[i], pr.wp.basis);
      MinpolyVerdict v = minpoly_and_semisimplicity(*pr.wp.action, pr.lambda, pr.eps);
      pr.wp.minpoly = v.minpoly;
      pr.wp.minpoly_matches = v.matches_quadratic;
      pr.wp.semisimple = v.semisimple;
      if (!v.matches_quadratic || v.semisimple == pr.double_root) {
        rep.status = Status::falsified;
        std::ostringstream os;
        os << "T_q on W_q has minimal polynomial " << poly_str(v.minpoly) << " (semisimple "
           << (v.semisimple ? "true" : "false") << ") for q = " << pr.prime.ideal;
        rep.witness = os.str();
        return rep;
      }
      stage = "build_Wp";
    }

    stage = "doubling_recursion";
    auto rec = check_doubling_recursion(F, W, Ms);
    rep.doubling_recursion_ok = !rec;
    if (rec) {
      rep.status = Status::falsified;
      rep.witness = *rec;
      return rep;
    }

    stage = "closure";
    auto clo = check_closure(f, W);
    rep.closure_equals_W = !clo;
    if (clo) {
      rep.status = Status::falsified;
      rep.witness = *clo;
      return rep;
    }
    stage = "done";
    rep.status = Status::verified;
  } catch (const InvariantViolation& e) {
    rep.status = Status::falsified;
    rep.witness = e.what();
  } catch (const PrecisionError& e) {
    const std::string what = e.what();
    throw PrecisionError(what.rfind(stage + ":", 0) == 0 ? what : stage + ": " + what);
  }
  return rep;
}

}  // namespace detail

/// Runs the experiment, doubling B on precision errors and the field degree when the
/// quadratics do not split. RootChoice::both yields two reports.
inline std::vector<DoublingReport> run_experiment(const ExperimentConfig& cfg) {
  if (!is_prime(cfg.p)) throw std::invalid_argument("p = " + std::to_string(cfg.p) + " is not prime");
  const QuadraticField F = make_field(cfg.D);
  const auto G = narrow_class_group(F);
  const int m_min = minimal_degree_for_exponent(cfg.p, G->exponent());
  int m_chars = cfg.m.value_or(m_min);
  if (m_chars % m_min != 0)
    throw std::invalid_argument("m = " + std::to_string(m_chars) + " cannot host the characters; use a multiple of " +
                                std::to_string(m_min));
  const std::int64_t B0 = cfg.B.value_or(detail::default_precision(F, cfg.p));
  if (B0 < 1) throw std::invalid_argument("B must be positive");

  std::vector<int> root_indices;
  if (cfg.roots == RootChoice::first || cfg.roots == RootChoice::both) root_indices.push_back(0);
  if (cfg.roots == RootChoice::second || cfg.roots == RootChoice::both) root_indices.push_back(1);

  std::vector<DoublingReport> out;
  for (int ri : root_indices) {
    std::int64_t B = B0;
    int m = m_chars, doublings = 0;
    std::vector<Attempt> attempts;
    while (true) {
      try {
        DoublingReport rep = detail::run_once(cfg, B, m, m_chars, ri);
        attempts.push_back({B, m, to_string(rep.status)});
        rep.attempts = attempts;
        out.push_back(std::move(rep));
        break;
      } catch (const PrecisionError& e) {
        attempts.push_back({B, m, std::string("precision: ") + e.what()});
        if (doublings >= cfg.max_precision_doublings) {
          DoublingReport rep;
          rep.config = cfg;
          rep.m = m;
          rep.precision = B;
          rep.class_number = G->order();
          rep.s = static_cast<int>(primes_above(F, cfg.p).size());
          rep.root_choice = ri == 0 ? "first" : "second";
          rep.status = Status::precision_exhausted;
          rep.stage = "precision";
          rep.witness = e.what();
          rep.attempts = attempts;
          out.push_back(std::move(rep));
          break;
        }
        B *= 2;
        ++doublings;
      } catch (const NeedsExtension& e) {
        attempts.push_back({B, m, std::string("extension: ") + e.what()});
        if (e.degree() > cfg.max_degree) throw std::invalid_argument(std::string("field degree cap reached: ") + e.what());
        m = e.degree();
      }
    }
  }
  return out;
}

}  // namespace hmfd
