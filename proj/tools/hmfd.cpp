// hmfd: class groups, operators on q-expansions, and doubling experiments over real
// quadratic fields.

#include "hmfd/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hmfd;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mod-p Hilbert modular form q-expansions over real quadratic fields"};
  app.require_subcommand(1);

  std::int64_t D = 3, p = 7, B = 0, apply_B = 200;
  int m = 0, phi1 = 0, phi2 = 0, jobs = 1;
  std::string mode = "zero", roots = "first", out, config_path, grid_path, form_path, op;
  std::uint64_t seed = 20240611;
  std::size_t count = 100;
  bool reverse = false;

  auto* info = app.add_subcommand("field-info", "Discriminant, fundamental unit, narrow class group, characters");
  info->add_option("--D", D, "Squarefree D > 1 defining Q(sqrt D)")->required();
  info->add_option("--p", p, "Characteristic for the character table");
  info->add_option("--m", m, "Degree of the coefficient field F_{p^m}");
  info->add_option("--out", out, "Output file (default stdout)");

  auto* apply = app.add_subcommand("apply", "Apply one operator to an Eisenstein series or a JSON expansion");
  apply->add_option("--D", D)->required();
  apply->add_option("--p", p)->required();
  apply->add_option("--m", m);
  apply->add_option("--B", apply_B, "Precision of the Eisenstein series")->capture_default_str();
  apply->add_option("--phi1", phi1);
  apply->add_option("--phi2", phi2);
  apply->add_option("--constant-mode", mode)->check(CLI::IsMember({"zero", "v_phi1", "v_phi2"}));
  apply->add_option("--form", form_path, "JSON expansion to use instead of an Eisenstein series");
  apply->add_option("--op", op, "T q=[a,b,c] | diamond q=[a,b,c] | VP P=[a,b,c] | hasse")->required();
  apply->add_option("--out", out);

  auto* dbl = app.add_subcommand("doubling", "Run doubling experiments (single config, config file, or grid)");
  dbl->add_option("--D", D);
  dbl->add_option("--p", p);
  dbl->add_option("--m", m);
  dbl->add_option("--B", B, "Starting precision (doubled on precision errors)");
  dbl->add_option("--phi1", phi1);
  dbl->add_option("--phi2", phi2);
  dbl->add_option("--constant-mode", mode)->check(CLI::IsMember({"zero", "v_phi1", "v_phi2"}));
  dbl->add_option("--roots", roots)->check(CLI::IsMember({"first", "second", "both"}));
  dbl->add_flag("--reverse-primes", reverse, "Process the primes above p in reverse order");
  dbl->add_option("--config", config_path, "JSON config file");
  dbl->add_option("--grid", grid_path, "JSON array or JSON-lines file of configs");
  dbl->add_option("--jobs", jobs, "Concurrent jobs for grids")->check(CLI::PositiveNumber);
  dbl->add_option("--seed", seed, "Accepted for interface uniformity; experiments are deterministic");
  dbl->add_option("--out", out);

  auto* vp = app.add_subcommand("check-vp", "V_P recursion and commutation lemma on random isotypic forms");
  vp->add_option("--D", D)->required();
  vp->add_option("--p", p)->required();
  vp->add_option("--m", m);
  vp->add_option("--B", B, "Precision of the random forms");
  vp->add_option("--count", count, "Number of random forms")->default_val(100);
  vp->add_option("--seed", seed, "Random seed");
  vp->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  std::optional<int> m_opt = m > 0 ? std::optional<int>(m) : std::nullopt;
  try {
    if (*info) {
      std::optional<std::int64_t> p_opt = info->count("--p") ? std::optional<std::int64_t>(p) : std::nullopt;
      emit(out, cli::cmd_field_info(D, p_opt, m_opt).dump(2) + "\n");
      return cli::kOk;
    }
    if (*apply) {
      cli::FormSpec spec;
      spec.D = D;
      spec.p = p;
      spec.m = m_opt;
      spec.B = apply_B;
      spec.phi1 = phi1;
      spec.phi2 = phi2;
      spec.constant_mode = constant_mode_from_string(mode);
      if (!form_path.empty()) spec.form = json::parse(slurp(form_path));
      emit(out, cli::cmd_apply(spec, op).dump(2) + "\n");
      return cli::kOk;
    }
    if (*dbl) {
      ExperimentConfig defaults;
      defaults.D = D;
      defaults.p = p;
      defaults.m = m_opt;
      if (B > 0) defaults.B = B;
      defaults.phi1 = phi1;
      defaults.phi2 = phi2;
      defaults.constant_mode = constant_mode_from_string(mode);
      defaults.roots = root_choice_from_string(roots);
      defaults.reverse_primes = reverse;
      std::vector<json> configs;
      if (!grid_path.empty()) {
        configs = cli::read_grid(slurp(grid_path));
      } else if (!config_path.empty()) {
        configs.push_back(json::parse(slurp(config_path)));
        if (out.empty() && configs.front().contains("out")) out = configs.front().at("out").get<std::string>();
      } else {
        configs.push_back(json::object());
      }
      bool usage_error = false;
      auto results = cli::run_grid(configs, defaults, jobs, &usage_error);
      std::string text;
      std::vector<Status> statuses;
      for (const auto& r : results) {
        for (const auto& line : r.lines) text += line + "\n";
        statuses.insert(statuses.end(), r.statuses.begin(), r.statuses.end());
      }
      emit(out, text);
      int code = cli::exit_code_for(statuses);
      if (code == cli::kOk && usage_error) return cli::kUsage;
      return code;
    }
    if (*vp) {
      const QuadraticField F = make_field(D);
      std::int64_t rad = 1;
      for (const auto& q : primes_above(F, p)) rad *= q.norm();
      if (B <= 0) B = rad * (rad + 8);
      auto sum = cli::check_vp_corpus(D, p, m_opt, B, count, seed);
      json j{{"D", D},
             {"p", p},
             {"B", B},
             {"seed", seed},
             {"forms", sum.forms},
             {"recursion_comparisons", sum.comparisons},
             {"recursion_failures", sum.recursion_failures},
             {"lemma_checks", sum.lemma_checks},
             {"lemma_failures", sum.lemma_failures},
             {"first_failure", sum.first_failure}};
      emit(out, j.dump(2) + "\n");
      return sum.recursion_failures + sum.lemma_failures ? cli::kFalsified : cli::kOk;
    }
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return cli::kPrecision;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return cli::kFalsified;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  }
  return cli::kUsage;
}
