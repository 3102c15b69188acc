#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fcheb/acceptance.hpp"
#include "fcheb/catalog.hpp"
#include "fcheb/moments.hpp"
#include "fcheb/report.hpp"
#include "fcheb/sturm.hpp"
#include "fcheb/sweeps.hpp"
#include "fcheb/vspace.hpp"

using namespace fcheb;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0, kViolation = 1, kUsage = 2, kRuntime = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::string> parse_cases(const std::string& s) {
  const auto ids = split(s, ',');
  for (const auto& id : ids)
    if (std::find(case_ids().begin(), case_ids().end(), id) == case_ids().end())
      throw UsageError("unknown case id '" + id + "' (known: 1..8, thm5)");
  return ids;
}

// "5" or "2:8"
std::pair<int, int> parse_range(const std::string& s) {
  int a = 0, b = 0;
  try {
    const auto colon = s.find(':');
    a = std::stoi(s.substr(0, colon));
    b = colon == std::string::npos ? a : std::stoi(s.substr(colon + 1));
  } catch (const std::logic_error&) {
    throw UsageError("n must be an integer or a range a:b, got '" + s + "'");
  }
  if (a > b) throw UsageError("empty n range " + s);
  return {a, b};
}

// Ascending coefficients "1,0,-1/2" -> 1 - h^2 / 2.
RatPoly parse_coefficients(const std::string& s) {
  std::vector<Rational> c;
  try {
    for (const auto& item : split(s, ',')) c.push_back(parse_rational(item));
  } catch (const std::exception& e) {
    throw UsageError("bad coefficient list '" + s + "': " + e.what());
  }
  return RatPoly(std::move(c));
}

std::string interval_text(const HamiltonianCase& c) {
  return "(" + to_string(c.sigma_lo) + ", " + (c.sigma_hi ? to_string(*c.sigma_hi) : std::string("+inf")) + ")";
}

std::vector<HamiltonianCase> cases_of(const std::vector<std::string>& ids) {
  std::vector<HamiltonianCase> out;
  for (const auto& c : all_cases())
    if (ids.empty() || std::find(ids.begin(), ids.end(), c.id) != ids.end()) out.push_back(c);
  return out;
}

void emit(const std::string& out_dir, const std::string& name, const std::string& text) {
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  write_atomic(std::filesystem::path(out_dir) / name, text);
  std::cerr << "wrote " << (std::filesystem::path(out_dir) / name).string() << "\n";
}

struct Common {
  std::string cases, n, out;
  int trials = 0;
  std::uint64_t seed = 20240601;
  double tol_quad = 1e-10, tol_pf = 1e-6;
  bool plots = false, raw = false, json = false;
};

int cmd_list(const Common& o) {
  const auto cs = cases_of(parse_cases(o.cases));
  if (o.json) {
    std::cout << catalog_text(cs);
    return kPass;
  }
  std::printf("%-5s %-36s %-7s %-7s %-7s %-7s %s\n", "case", "H", "lambda", "mu", "h0", "h1", "Sigma");
  for (const auto& c : cs)
    std::printf("%-5s %-36s %-7s %-7s %-7s %-7s %s\n", c.id.c_str(), c.H.str().c_str(),
                to_string(c.system.lambda).c_str(), to_string(c.system.mu).c_str(), to_string(c.system.h0).c_str(),
                to_string(c.system.h1).c_str(), interval_text(c).c_str());
  return kPass;
}

int cmd_verify(const Common& o, const std::string& criteria) {
  AcceptanceOptions opt;
  opt.cases = parse_cases(o.cases);
  if (!o.n.empty()) opt.n_range = parse_range(o.n);
  if (o.trials > 0) opt.trials = o.trials;
  opt.seed = o.seed;
  opt.tol_quad = o.tol_quad;
  opt.tol_pf = o.tol_pf;
  opt.out_dir = o.out;
  opt.plots = o.plots;
  std::vector<int> ids;
  for (const auto& s : split(criteria, ',')) {
    try {
      ids.push_back(std::stoi(s));
    } catch (const std::logic_error&) {
      throw UsageError("criteria are numbers 1..10, got '" + s + "'");
    }
    if (ids.back() < 1 || ids.back() > 10) throw UsageError("criteria are numbers 1..10, got " + s);
  }
  try {
    validate(opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto report = acceptance_report(opt, {});
  for (const auto& note : report["overrides"]) std::cout << "note: " << note.get<std::string>() << "\n";
  bool all = true;
  for (const auto& r : run_acceptance(opt, ids)) {
    std::cout << criterion_line(r) << std::endl;
    all = all && r.pass;
  }
  return all ? kPass : kViolation;
}

int cmd_count(const Common& o, const std::string& alpha, const std::string& beta) {
  const auto ids = parse_cases(o.cases.empty() ? "1" : o.cases);
  const auto [n0, n1] = parse_range(o.n.empty() ? "3" : o.n);
  std::vector<TrialRow> rows;
  for (const auto& id : ids)
    for (int n = n0; n <= n1; ++n) {
      SweepConfig cfg;
      cfg.case_id = id;
      cfg.n = n;
      cfg.trials = o.trials > 0 ? o.trials : 200;
      cfg.seed = o.seed;
      cfg.raw = o.raw;
      if (!alpha.empty()) cfg.alpha = parse_coefficients(alpha);
      if (!beta.empty()) cfg.beta = parse_coefficients(beta);
      std::vector<TrialRow> part;
      try {
        part = run_sweep(cfg);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      for (auto& r : part) rows.push_back(std::move(r));
    }
  emit(o.out, "count.csv", count_csv(rows));
  if (!o.out.empty()) emit(o.out, "sigma.csv", sigma_csv(rows));
  int flagged = 0;
  for (const auto& r : rows) {
    if (!r.flagged()) continue;
    ++flagged;
    if (!o.plots || o.out.empty()) continue;
    ContourSpec spec;
    spec.R = r.report.R;
    spec.r = r.report.r;
    spec.cut_offset = std::min(spec.cut_offset, spec.r / 10);
    const auto stem = "plots/case" + r.case_id + "_n" + std::to_string(r.n) + "_trial" + std::to_string(r.trial);
    emit(o.out, stem + "_contour.svg", contour_phase_svg(r, spec));
    if (r.sigma_zeros) emit(o.out, stem + "_sigma.svg", sigma_graph_svg(r));
  }
  if (flagged) std::cerr << flagged << " of " << rows.size() << " trials flagged\n";
  return flagged ? kViolation : kPass;
}

int cmd_moments(const Common& o) {
  const auto cs = cases_of(parse_cases(o.cases));
  const auto [n0, n1] = parse_range(o.n.empty() ? "1:6" : o.n);
  QuadOptions q;
  q.tol_quad = o.tol_quad;
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> d(-1000, 1000);
  ojson j;
  j["schema"] = 1;
  j["reductions"] = ojson::array();
  bool ok = true;
  for (const auto& c : cs)
    for (int n = std::max(n0, c.id == "8" ? 0 : 1); n <= n1; ++n) {
      if (quartic_nu(c.id) || c.id == "8") {
        std::map<MomentIndex, Rational> coef;
        for (const auto& key : spanning_set(c.id, n)) coef[key] = Rational(d(rng), 1000);
        const auto r = reduce(c.id, n, coef, q);
        ok = ok && r.residual < 1e-6;
        j["reductions"].push_back(reduction_to_json(r));
      } else {
        const auto v = validate_degrees(c.id, n, q);
        ok = ok && v.full_residual < 1e-6 && (!v.reduced_alpha || *v.reduced_alpha > 1e-3) &&
             (!v.reduced_beta || *v.reduced_beta > 1e-3);
        j["reductions"].push_back(degree_validation_to_json(v));
      }
    }
  emit(o.out, "moments.json", j.dump(2) + "\n");
  return ok ? kPass : kViolation;
}

int cmd_sturm(const Common& o, int k_max) {
  const auto cs = cases_of(parse_cases(o.cases));
  const int trials = o.trials > 0 ? o.trials : 50;
  ojson j;
  j["schema"] = 1;
  j["cases"] = ojson::array();
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
  for (const auto& c : cs) {
    ojson e{{"case", c.id}, {"eligible", sturm_eligible(c)}};
    if (!sturm_eligible(c)) {
      j["cases"].push_back(std::move(e));
      continue;
    }
    const auto s = to_normal_form(c.system, NormalForm::k7).system;
    e["frames"] = ojson::array();
    for (int k = 0; k <= k_max; ++k) {
      const auto f = eigenframe(k, s.lambda, s.mu, s.omega);
      auto fj = eigenframe_to_json(f);
      fj["sylvester_defect"] = to_string(sylvester_defect(f));
      ok = ok && sylvester_defect(f) == 0;
      e["frames"].push_back(std::move(fj));
    }
    int bad = 0;
    for (const auto& t : real_zero_sweep(c, trials, o.seed)) {
      bad += !t.verdict.pass;
      rows.push_back({c.id, std::to_string(t.trial), std::to_string(t.verdict.count), std::to_string(t.verdict.bound),
                      t.verdict.pass ? "1" : "0", std::to_string(t.verdict.tail_zeros),
                      t.verdict.chebyshev_bound ? std::to_string(*t.verdict.chebyshev_bound) : "", to_string(t.s),
                      t.mirrored ? "1" : "0"});
    }
    e["real_zero_failures"] = bad;
    ok = ok && bad == 0;
    j["cases"].push_back(std::move(e));
  }
  const auto csv =
      csv_text({"case", "trial", "count", "bound", "pass", "tail_zeros", "chebyshev_bound", "s", "mirrored"}, rows);
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    emit(o.out, "sturm.csv", csv);
    emit(o.out, "sturm.json", j.dump(2) + "\n");
  }
  return ok ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of zero bounds for Abelian integrals satisfying 2x2 Fuchsian systems"};
  app.require_subcommand(1);
  Common o;
  std::string criteria, alpha, beta;
  int k_max = 5;

  auto add_cases = [&](CLI::App* s) { s->add_option("--cases", o.cases, "comma-separated case ids (1..8, thm5)"); };
  auto add_run = [&](CLI::App* s) {
    s->add_option("--n", o.n, "n or a range a:b");
    s->add_option("--trials", o.trials, "trials per configuration")->check(CLI::PositiveNumber);
    s->add_option("--seed", o.seed, "64-bit seed");
    s->add_option("--tol-quad", o.tol_quad, "quadrature tolerance")->check(CLI::PositiveNumber);
    s->add_option("--out", o.out, "output directory");
  };

  auto* list = app.add_subcommand("list", "catalogued cases with exponents, Sigma, h0, h1");
  add_cases(list);
  list->add_flag("--json", o.json, "print the catalog as JSON");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite (criteria 1..10)");
  add_cases(verify);
  add_run(verify);
  verify->add_option("--tol-pf", o.tol_pf, "residual threshold of the Picard-Fuchs checks")->check(CLI::PositiveNumber);
  verify->add_option("--criteria", criteria, "comma-separated subset, e.g. 1,2,8");
  bool verify_plots = true, count_plots = false;
  verify->add_flag("--plots,!--no-plots", verify_plots, "SVG evidence for flagged trials (default on)");

  auto* count = app.add_subcommand("count", "argument-principle zero counts of random or explicit elements");
  add_cases(count);
  add_run(count);
  count->add_option("-P,--alpha", alpha, "ascending coefficients of alpha(h), e.g. 1,0,-1/2");
  count->add_option("-Q,--beta", beta, "ascending coefficients of beta(h)");
  count->add_flag("--raw", o.raw, "accept degrees above those of the integral space");
  count->add_flag("--plots", count_plots, "SVG plots for flagged trials (needs --out)");

  auto* moments = app.add_subcommand("moments", "reductions of the integral space to alpha I1 + beta I2");
  add_cases(moments);
  add_run(moments);

  auto* sturm = app.add_subcommand("sturm", "eigenframes and the real-line zero bound");
  add_cases(sturm);
  add_run(sturm);
  sturm->add_option("--k", k_max, "largest k of the eigenframes")->check(CLI::Range(0, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }
  o.plots = verify->parsed() ? verify_plots : count_plots;

  try {
    if (list->parsed()) return cmd_list(o);
    if (verify->parsed()) return cmd_verify(o, criteria);
    if (count->parsed()) return cmd_count(o, alpha, beta);
    if (moments->parsed()) return cmd_moments(o);
    if (sturm->parsed()) return cmd_sturm(o, k_max);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
