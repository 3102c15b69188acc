#include "fcheb/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fcheb/catalog.hpp"
#include "fcheb/continuation.hpp"
#include "fcheb/moments.hpp"
#include "fcheb/picard_fuchs.hpp"
#include "fcheb/report.hpp"
#include "fcheb/sturm.hpp"
#include "fcheb/vspace.hpp"

namespace fcheb {

namespace {

using Clock = std::chrono::steady_clock;
using ojson = nlohmann::ordered_json;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

bool selected(const AcceptanceOptions& opt, const std::string& id) {
  return opt.cases.empty() || std::find(opt.cases.begin(), opt.cases.end(), id) != opt.cases.end();
}

std::vector<HamiltonianCase> chosen_cases(const AcceptanceOptions& opt) {
  std::vector<HamiltonianCase> out;
  for (const auto& c : all_cases())
    if (selected(opt, c.id)) out.push_back(c);
  return out;
}

QuadOptions quad(const AcceptanceOptions& opt) {
  QuadOptions q;
  q.tol_quad = opt.tol_quad;
  return q;
}

// Rows of the zero-count sweep, shared by criteria 7 and 10.
struct SweepStore {
  bool done = false;
  std::vector<TrialRow> rows;
  std::vector<ojson> configs;
};

SweepStore run_sweeps(const AcceptanceOptions& opt) {
  SweepStore st;
  for (const auto& [id, n] : sweep_configurations(opt)) {
    SweepConfig cfg;
    cfg.case_id = id;
    cfg.n = n;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    const auto t0 = Clock::now();
    auto rows = run_sweep(cfg);
    int max_d = 0, max_s = -1, bad = 0;
    for (const auto& r : rows) {
      max_d = std::max(max_d, r.report.zero_count);
      if (r.sigma_zeros) max_s = std::max(max_s, *r.sigma_zeros);
      bad += r.flagged();
    }
    ojson j;
    j["case"] = id;
    j["n"] = n;
    j["trials"] = rows.size();
    j["bound"] = rows.front().verdict.d_bound;
    j["max_zeros"] = max_d;
    j["sigma_bound"] = rows.front().verdict.sigma_bound;
    j["max_sigma_zeros"] = max_s;
    j["flagged"] = bad;
    j["seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
    st.configs.push_back(std::move(j));
    for (auto& r : rows) st.rows.push_back(std::move(r));
  }
  st.done = true;
  return st;
}

CriterionResult hypotheses(const AcceptanceOptions& opt) {
  CriterionResult r{1, "hypotheses H1, H2, lambda + mu = 2 and det A roots", true, "", 0.0, 1.0, ojson::array()};
  auto check = [&](const std::string& id, const Mat2& a0, const Mat2& a1, const Rational& h0, const Rational& h1,
                   const Rational& lam, const Rational& mu, const std::string& source) {
    const auto rep = verify_hypotheses(a0, a1);
    bool ok = rep.h1 && rep.h2 && rep.trace_identity && rep.distinct_roots && lam + mu == 2;
    bool roots = false, exps = false;
    if (rep.det_roots_exact) {
      const auto& d = *rep.det_roots_exact;
      roots = (d[0] == h0 && d[1] == h1) || (d[0] == h1 && d[1] == h0);
    }
    if (rep.eigenvalues_exact) {
      const auto& e = *rep.eigenvalues_exact;
      const Rational x = 1 / e[0], y = 1 / e[1];
      exps = (x == lam && y == mu) || (x == mu && y == lam);
    }
    ok = ok && roots && exps;
    r.pass = r.pass && ok;
    r.data.push_back({{"case", id}, {"source", source}, {"h1", rep.h1}, {"h2", rep.h2}, {"det_roots", roots},
                      {"exponents", exps}, {"pass", ok}});
  };
  int rows = 0;
  for (const auto& c : chosen_cases(opt)) {
    check(c.id, c.system.a0, c.system.a1, c.system.h0, c.system.h1, c.system.lambda, c.system.mu, "built-in");
    ++rows;
  }
  if (opt.catalog_file) {
    std::ifstream in(*opt.catalog_file);
    if (!in) throw std::runtime_error("cannot read " + opt.catalog_file->string());
    const auto j = ojson::parse(in);
    for (const auto& e : j.at("cases")) {
      const auto id = e.at("id").get<std::string>();
      if (!selected(opt, id)) continue;
      Mat2 a0, a1;
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
          a0(i, k) = parse_rational(e.at("A").at(i).at(k).at(0).get<std::string>());
          a1(i, k) = parse_rational(e.at("A").at(i).at(k).at(1).get<std::string>());
        }
      auto rat = [&](const char* key) { return parse_rational(e.at(key).get<std::string>()); };
      check(id, a0, a1, rat("h0"), rat("h1"), rat("lambda"), rat("mu"), opt.catalog_file->filename().string());
      ++rows;
    }
  }
  r.detail = std::to_string(rows) + " rows checked in exact arithmetic";
  return r;
}

CriterionResult picard_fuchs_residuals(const AcceptanceOptions& opt) {
  CriterionResult r{2, "Picard-Fuchs residual |I - A I'| / |I|", true, "", 0.0, 120.0, ojson::array()};
  double worst = 0.0;
  for (const auto& c : chosen_cases(opt)) {
    const double res = residual_fuchsian(c, default_h_grid(c, 20), quad(opt));
    worst = std::max(worst, res);
    r.pass = r.pass && res < opt.tol_pf;
    r.data.push_back({{"case", c.id}, {"points", 20}, {"residual", res}});
  }
  r.detail = "worst " + sci(worst) + " < " + sci(opt.tol_pf) + " over 20 levels per case";
  return r;
}

CriterionResult hypergeometric(const AcceptanceOptions& opt) {
  CriterionResult r{3, "hypergeometric equations for x and y in the normal form", true, "", 0.0, std::nullopt,
                    ojson::array()};
  double worst = 0.0;
  for (const auto& c : chosen_cases(opt)) {
    const auto res = residual_hypergeometric(c, default_t_grid(c, 10), quad(opt));
    worst = std::max({worst, res.x, res.y});
    r.pass = r.pass && res.x < opt.tol_pf && res.y < opt.tol_pf;
    r.data.push_back({{"case", c.id}, {"points", 10}, {"x", res.x}, {"y", res.y}});
  }
  r.detail = "worst " + sci(worst) + " < " + sci(opt.tol_pf) + " over 10 points per case";
  return r;
}

CriterionResult dimensions(const AcceptanceOptions& opt) {
  CriterionResult r{4, "dim V_s formula against rank oracles", true, "", 0.0, std::nullopt, ojson::object()};
  int pairs = 0, mismatches = 0;
  std::set<std::string> seen;
  for (const auto& c : chosen_cases(opt)) {
    const Rational lam = c.system.lambda, mu = c.system.mu;
    if (!seen.insert(to_string(lam)).second) continue;
    for (Rational s = lambda_star(lam); s <= 10; s += Rational(1, 12)) {
      ++pairs;
      if (rank_oracle_dim(lam, s) != dim_vs(lam, mu, s).dim) {
        ++mismatches;
        r.data["formula_mismatches"].push_back({{"lambda", to_string(lam)}, {"s", to_string(s)}});
      }
    }
  }
  r.data["exponent_pairs"] = seen.size();
  r.data["s_values"] = pairs;
  int spaces = 0;
  auto integral = [&](const std::string& id, int n, int expected_gap) {
    const auto a = application_space(id, n);
    const int rank = dim_check(id, n, quad(opt));
    const int gap = a.dim_vs.value_or(-1) - rank;
    const bool ok = rank == a.dim && gap == expected_gap;
    ++spaces;
    if (!ok) {
      ++mismatches;
      r.data["integral_space_mismatches"].push_back(
          {{"case", id}, {"n", n}, {"rank", rank}, {"dim", a.dim}, {"dim_vs", a.dim_vs.value_or(-1)}, {"gap", gap}});
    }
  };
  for (const char* id : {"1", "2", "3", "4", "5"})
    if (selected(opt, id))
      for (int n = 1; n <= 10; ++n) integral(id, n, 0);
  for (const char* id : {"6", "7"})
    if (selected(opt, id))
      for (int n = 1; n <= 12; ++n) integral(id, n, n <= 6 ? 0 : (n - 3) / 4);
  r.data["integral_spaces"] = spaces;
  r.pass = mismatches == 0;
  r.detail = std::to_string(pairs) + " (lambda, s) pairs and " + std::to_string(spaces) + " integral spaces, " +
             std::to_string(mismatches) + " mismatches";
  return r;
}

CriterionResult recurrences(const AcceptanceOptions& opt) {
  CriterionResult r{5, "moment recurrences on quadrature data", true, "", 0.0, std::nullopt, ojson::array()};
  double worst = 0.0;
  int checks = 0;
  for (const char* id : {"6", "7"}) {
    if (!selected(opt, id)) continue;
    const auto c = get_case(id);
    const int nu = *quartic_nu(id);
    double w = 0.0;
    for (double h : interior_grid(c, 5)) {
      const auto t = make_moment_table(c, h, 16, quad(opt));
      for (int i = 0; i <= 6; i += 2)
        for (int j = 0; j <= 6; j += 2)
          for (const auto& rc : recurrence_quartic(t, i, j, nu)) {
            w = std::max(w, rc.residual);
            ++checks;
          }
    }
    r.data.push_back({{"case", id}, {"nu", nu}, {"residual", w}});
    worst = std::max(worst, w);
  }
  if (selected(opt, "8")) {
    double w = 0.0;
    for (double h : interior_grid(get_case("8"), 5)) {
      const auto t = make_case8_table(h, 8, 12, quad(opt));
      for (int k = 0; k <= 6; ++k)
        for (int l : {0, 2, 4})
          for (const auto& rc : recurrence_case8(t, k, l)) {
            w = std::max(w, rc.residual);
            ++checks;
          }
    }
    r.data.push_back({{"case", "8"}, {"residual", w}});
    worst = std::max(worst, w);
  }
  r.pass = worst < 1e-6;
  r.detail = std::to_string(checks) + " relations, worst " + sci(worst) + " < 1e-06";
  return r;
}

CriterionResult reductions(const AcceptanceOptions& opt) {
  CriterionResult r{6, "reductions to alpha I1 + beta I2", true, "", 0.0, std::nullopt, ojson::array()};
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> d(-1000, 1000);
  double worst_exact = 0.0, worst_fit = 0.0, lowest_reduced = 1.0;
  int runs = 0;
  for (const char* id : {"6", "7", "8"}) {
    if (!selected(opt, id)) continue;
    for (int n = 1; n <= 9; ++n) {
      std::map<MomentIndex, Rational> coef;
      for (const auto& key : spanning_set(id, n)) coef[key] = Rational(d(rng), 1000);
      const auto red = reduce(id, n, coef, quad(opt));
      worst_exact = std::max(worst_exact, red.residual);
      const bool ok = red.exact && red.residual < 1e-6;
      r.pass = r.pass && ok;
      ++runs;
      r.data.push_back({{"case", id}, {"n", n}, {"route", "exact"}, {"residual", red.residual}, {"pass", ok}});
    }
  }
  for (const char* id : {"1", "2", "3", "4", "5"}) {
    if (!selected(opt, id)) continue;
    for (int n = 1; n <= 8; ++n) {
      const auto v = validate_degrees(id, n, quad(opt));
      bool ok = v.full_residual < 1e-6;
      ojson j{{"case", id}, {"n", n}, {"route", "fit"}, {"residual", v.full_residual}};
      for (const auto& [key, red] : {std::pair{"reduced_alpha", v.reduced_alpha}, std::pair{"reduced_beta", v.reduced_beta}}) {
        if (!red) continue;
        ok = ok && *red > 1e-3;
        lowest_reduced = std::min(lowest_reduced, *red);
        j[key] = *red;
      }
      j["pass"] = ok;
      worst_fit = std::max(worst_fit, v.full_residual);
      r.pass = r.pass && ok;
      ++runs;
      r.data.push_back(std::move(j));
    }
  }
  r.detail = std::to_string(runs) + " reductions: exact worst " + sci(worst_exact) + ", fit worst " + sci(worst_fit) +
             " (< 1e-06), reduced-degree fits >= " + sci(lowest_reduced) + " (> 1e-03)";
  return r;
}

std::string stem(const TrialRow& row) {
  return "case" + row.case_id + "_n" + std::to_string(row.n) + "_trial" + std::to_string(row.trial);
}

CriterionResult zero_bounds(const AcceptanceOptions& opt, SweepStore& st) {
  CriterionResult r{7, "zero bounds on the cut plane and the period annulus", true, "", 0.0, 900.0, ojson::object()};
  if (!st.done) st = run_sweeps(opt);
  int violations = 0, annulus = 0;
  for (const auto& row : st.rows) {
    const bool bad = !row.verdict.d_pass || (row.verdict.sigma_pass && !*row.verdict.sigma_pass);
    if (row.sigma_zeros) ++annulus;
    if (!bad) continue;
    ++violations;
    r.data["violations"].push_back({{"case", row.case_id}, {"n", row.n}, {"trial", row.trial},
                                    {"alpha", row.alpha.str("h")}, {"beta", row.beta.str("h")},
                                    {"zeros", row.report.zero_count}, {"bound", row.verdict.d_bound},
                                    {"sigma_zeros", row.sigma_zeros.value_or(-1)},
                                    {"sigma_bound", row.verdict.sigma_bound}});
  }
  r.data["configurations"] = st.configs;
  r.pass = violations == 0;
  r.detail = std::to_string(st.configs.size()) + " configurations, " + std::to_string(st.rows.size()) + " trials (" +
             std::to_string(annulus) + " with annulus counts), " + std::to_string(violations) + " violations";
  return r;
}

CriterionResult gegenbauer(const AcceptanceOptions&) {
  CriterionResult r{8, "polynomial solutions for integer lambda", true, "", 0.0, std::nullopt, ojson::array()};
  for (int lam : {-2, -1, 2, 3, 4}) {
    const auto p = gegenbauer_solution(lam);
    const bool solves = hypergeometric_operator(p, lam).is_zero();
    const bool roots = all_roots_in_unit_interval(p);
    r.pass = r.pass && solves && roots;
    r.data.push_back({{"lambda", lam}, {"polynomial", p.str("t")}, {"exact", solves}, {"roots_in_unit_interval", roots}});
  }
  r.detail = "lambda in {-2, -1, 2, 3, 4}";
  return r;
}

CriterionResult appendix(const AcceptanceOptions& opt) {
  CriterionResult r{9, "eigenframe recursion, operator identity and real-line zero bound", true, "", 0.0,
                    std::nullopt, ojson::array()};
  double op_worst = 0.0, eig_worst = 0.0;
  int trials = 0, failures = 0;
  std::vector<double> unit;
  for (int k = 1; k <= 9; ++k) unit.push_back(0.1 * k);
  for (const auto& c : chosen_cases(opt)) {
    ojson j{{"case", c.id}};
    double op = 0.0;
    for (int k = 0; k <= 4; ++k) op = std::max(op, operator_identity_residual(c, k, default_t_grid(c, 4), quad(opt)));
    op_worst = std::max(op_worst, op);
    j["operator_identity"] = op;
    bool ok = op < 1e-8;
    if (sturm_eligible(c)) {
      const auto nf = to_normal_form(c.system, NormalForm::k7);
      const auto& s = nf.system;
      std::vector<NormalFormJet> quad_jets;
      for (double t : default_t_grid(c, 4)) quad_jets.push_back(normal_form_jet(c, t, quad(opt)));
      const auto germ = germ_jets(s.lambda, s.omega, unit);
      bool sylvester = true;
      double eig = 0.0;
      for (int k = 0; k <= 5; ++k) {
        const auto f = eigenframe(k, s.lambda, s.mu, s.omega);
        sylvester = sylvester && sylvester_defect(f) == 0;
        if (k > 4) continue;
        for (const auto& jets : {quad_jets, germ}) {
          const auto e = eigen_residual(f, jets);
          eig = std::max({eig, e.x, e.y});
        }
      }
      eig_worst = std::max(eig_worst, eig);
      int bad = 0;
      for (const auto& t : real_zero_sweep(c, opt.sturm_trials, opt.seed)) bad += !t.verdict.pass;
      trials += opt.sturm_trials;
      failures += bad;
      j["sylvester_exact"] = sylvester;
      j["eigen_relation"] = eig;
      j["real_zero_trials"] = opt.sturm_trials;
      j["real_zero_failures"] = bad;
      ok = ok && sylvester && eig < 1e-8 && bad == 0;
    } else {
      j["eligible"] = false;
    }
    j["pass"] = ok;
    r.pass = r.pass && ok;
    r.data.push_back(std::move(j));
  }
  r.detail = "operator identity " + sci(op_worst) + ", eigen relations " + sci(eig_worst) + " (< 1e-08), " +
             std::to_string(failures) + " of " + std::to_string(trials) + " real-line trials over the bound";
  return r;
}

CriterionResult robustness(const AcceptanceOptions& opt, SweepStore& st) {
  CriterionResult r{10, "contour stability and conjugation symmetry", true, "", 0.0, std::nullopt, ojson::object()};
  if (!st.done) st = run_sweeps(opt);
  int unstable = 0;
  double max_R = 0.0;
  for (const auto& row : st.rows) {
    max_R = std::max(max_R, row.report.R);
    if (row.report.stable) continue;
    ++unstable;
    r.data["unstable"].push_back({{"case", row.case_id}, {"n", row.n}, {"trial", row.trial}, {"R", row.report.R},
                                  {"r", row.report.r}});
  }
  std::set<std::string> seen;
  double conj = 0.0;
  for (const auto& c : chosen_cases(opt)) {
    const auto nf = to_normal_form(c.system, NormalForm::k7);
    if (is_integer(nf.system.lambda)) continue;
    if (!seen.insert(to_string(nf.system.lambda) + "/" + to_string(nf.system.omega)).second) continue;
    const auto germ = distinguished_germ(nf.system.lambda, nf.system.omega);
    for (const Complex t : {Complex(2.0, 0.0), Complex(5.0, 0.0), Complex(40.0, 0.0), Complex(0.7, 0.3),
                            Complex(-4.0, 1.0), Complex(30.0, 7.0)}) {
      const auto up = solution_at(germ, t, 1);
      // Lower route, not the mirror image of the upper one.
      ComplexPath lower;
      lower.waypoints = {Complex(0.3, -0.3), Complex(-1.0, -2.0), Complex(t.real(), -t.imag() - 3.0), std::conj(t)};
      lower.side = t.imag() == 0.0 ? -1 : 0;
      const auto down = continue_solution(germ, lower);
      const double scale = std::max(std::abs(up[0]) + std::abs(up[1]), 1e-300);
      conj = std::max(conj, (std::abs(up[0] - std::conj(down[0])) + std::abs(up[1] - std::conj(down[1]))) / scale);
    }
  }
  r.data["counts"] = st.rows.size();
  r.data["largest_R"] = max_R;
  r.data["conjugation_defect"] = conj;
  r.pass = unstable == 0 && conj < 1e-8;
  r.detail = std::to_string(unstable) + " of " + std::to_string(st.rows.size()) +
             " counts unstable (largest R used " + format_double(max_R) + "), conjugation defect " + sci(conj) +
             " < 1e-08";
  return r;
}

void write_outputs(const AcceptanceOptions& opt, const SweepStore& st, const std::vector<CriterionResult>& res) {
  namespace fs = std::filesystem;
  if (opt.out_dir.empty()) return;
  if (st.done) {
    write_atomic(opt.out_dir / "count.csv", count_csv(st.rows));
    write_atomic(opt.out_dir / "sigma.csv", sigma_csv(st.rows));
    if (opt.plots)
      for (const auto& row : st.rows) {
        if (!row.flagged()) continue;
        ContourSpec spec;
        spec.R = row.report.R;
        spec.r = row.report.r;
        spec.cut_offset = std::min(spec.cut_offset, spec.r / 10);
        write_atomic(opt.out_dir / "plots" / (stem(row) + "_contour.svg"), contour_phase_svg(row, spec));
        if (row.sigma_zeros) write_atomic(opt.out_dir / "plots" / (stem(row) + "_sigma.svg"), sigma_graph_svg(row));
      }
  }
  write_atomic(opt.out_dir / "acceptance.json", acceptance_report(opt, res).dump(2) + "\n");
}

}  // namespace

void validate(const AcceptanceOptions& opt) {
  const auto& ids = case_ids();
  for (const auto& c : opt.cases)
    if (std::find(ids.begin(), ids.end(), c) == ids.end()) throw std::invalid_argument("unknown case id: " + c);
  if (opt.trials < 1 || opt.sturm_trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(opt.tol_quad > 0) || !(opt.tol_pf > 0)) throw std::invalid_argument("tolerances must be positive");
  if (opt.n_range && opt.n_range->first > opt.n_range->second) throw std::invalid_argument("empty n range");
}

std::vector<std::pair<std::string, int>> sweep_configurations(const AcceptanceOptions& opt) {
  std::vector<std::pair<std::string, int>> all;
  for (const char* id : {"1", "2", "3", "4", "5"})
    for (int n : {3, 6}) all.emplace_back(id, n);
  for (const char* id : {"6", "7"})
    for (int n : {4, 7, 11}) all.emplace_back(id, n);
  for (int n = 0; n <= 6; ++n) all.emplace_back("8", n);
  for (int n = 2; n <= 8; ++n) all.emplace_back("thm5", n);
  std::vector<std::pair<std::string, int>> out;
  for (const auto& [id, n] : all) {
    if (!selected(opt, id)) continue;
    if (opt.n_range && (n < opt.n_range->first || n > opt.n_range->second)) continue;
    out.emplace_back(id, n);
  }
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, const std::vector<int>& ids_in) {
  validate(opt);
  std::vector<int> ids = ids_in;
  if (ids.empty())
    for (int k = 1; k <= 10; ++k) ids.push_back(k);
  SweepStore st;
  std::vector<CriterionResult> out;
  for (int id : ids) {
    const auto t0 = Clock::now();
    CriterionResult r;
    switch (id) {
      case 1: r = hypotheses(opt); break;
      case 2: r = picard_fuchs_residuals(opt); break;
      case 3: r = hypergeometric(opt); break;
      case 4: r = dimensions(opt); break;
      case 5: r = recurrences(opt); break;
      case 6: r = reductions(opt); break;
      case 7: r = zero_bounds(opt, st); break;
      case 8: r = gegenbauer(opt); break;
      case 9: r = appendix(opt); break;
      case 10: r = robustness(opt, st); break;
      default: throw std::invalid_argument("criteria are numbered 1..10, got " + std::to_string(id));
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.budget_seconds && r.seconds >= *r.budget_seconds) {
      r.pass = false;
      r.detail += "; runtime over the " + format_double(*r.budget_seconds) + " s budget";
    }
    out.push_back(std::move(r));
  }
  write_outputs(opt, st, out);
  return out;
}

std::string criterion_line(const CriterionResult& r) {
  char t[32];
  std::snprintf(t, sizeof t, "%.1f s", r.seconds);
  std::ostringstream o;
  o << "criterion " << r.id << (r.id < 10 ? "  " : " ") << (r.pass ? "PASS" : "FAIL") << "  " << r.title << ": "
    << r.detail << " (" << t << ")";
  return o.str();
}

ojson acceptance_report(const AcceptanceOptions& opt, const std::vector<CriterionResult>& results) {
  ojson j;
  j["schema"] = 1;
  ojson cfg;
  cfg["cases"] = opt.cases;
  if (opt.n_range)
    cfg["n_range"] = {opt.n_range->first, opt.n_range->second};
  else
    cfg["n_range"] = nullptr;
  cfg["trials"] = opt.trials;
  cfg["sturm_trials"] = opt.sturm_trials;
  cfg["seed"] = opt.seed;
  cfg["tol_quad"] = opt.tol_quad;
  cfg["tol_pf"] = opt.tol_pf;
  j["config"] = std::move(cfg);
  const AcceptanceOptions defaults;
  ojson notes = ojson::array();
  if (opt.tol_quad != defaults.tol_quad)
    notes.push_back("quadrature tolerance overridden: " + sci(opt.tol_quad) + " (default " + sci(defaults.tol_quad) + ")");
  if (opt.tol_pf != defaults.tol_pf)
    notes.push_back("residual threshold of criteria 2-3 overridden: " + sci(opt.tol_pf) + " (default " +
                    sci(defaults.tol_pf) + ")");
  j["overrides"] = std::move(notes);
  bool all = true;
  j["criteria"] = ojson::array();
  for (const auto& r : results) {
    all = all && r.pass;
    ojson c{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}};
    c["budget_seconds"] = r.budget_seconds ? ojson(*r.budget_seconds) : ojson(nullptr);
    c["data"] = r.data;
    j["criteria"].push_back(std::move(c));
  }
  j["pass"] = all;
  return j;
}

}  // namespace fcheb
