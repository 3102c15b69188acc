#include "fcheb/sweeps.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <random>
#include <stdexcept>

#include "fcheb/catalog.hpp"
#include "fcheb/moments.hpp"
#include "fcheb/report.hpp"

namespace fcheb {

namespace {

constexpr double kSigmaCut = 64000.0;

std::uint32_t fnv1a(const std::string& s) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : s) h = (h ^ c) * 16777619u;
  return h;
}

RatPoly random_poly(int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1000, 1000);
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.push_back(Rational(d(rng), 1000));
  return RatPoly(std::move(c));
}

// Random element of the span of the moment (or line-integral) spanning set, reduced exactly.
std::pair<RatPoly, RatPoly> random_exact(const std::string& case_id, int n, const std::vector<MomentIndex>& idx,
                                         std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1000, 1000);
  std::map<MomentIndex, Rational> coef;
  for (const auto& key : idx) coef[key] = Rational(d(rng), 1000);
  return *exact_reduction(case_id, n, coef);
}

}  // namespace

SigmaSpan sigma_span(const HamiltonianCase& c) {
  const auto nf = to_normal_form(c.system, NormalForm::k7);
  const double lo = to_double(nf.transform.map_h(c.sigma_lo));
  double hi;
  SigmaSpan s;
  if (c.sigma_hi) {
    hi = to_double(nf.transform.map_h(*c.sigma_hi));
  } else {
    hi = nf.transform.scale > 0 ? kSigmaCut : -kSigmaCut;
    s.truncated = true;
  }
  s.a = std::min(lo, hi);
  s.b = std::max(lo, hi);
  if (s.a < -kSigmaCut) {
    s.a = -kSigmaCut;
    s.truncated = true;
  }
  const bool unit = s.a >= 0.0 && s.b <= 1.0;
  const bool negative = s.b <= 0.0;
  if (!unit && !negative) throw std::logic_error("period annulus of case " + c.id + " does not map into (0, 1) or t < 0");
  return s;
}

IntervalCount count_zeros_sigma(const VSpaceElement& elem, const HamiltonianCase& c) {
  const auto s = sigma_span(c);
  if (s.b <= 0.0) return count_zeros_negative(elem, s.a, std::min(s.b, -1e-9));
  return count_zeros_interval(elem, std::max(s.a, 1e-6), std::min(s.b, 1.0 - 1e-6));
}

bool TrialRow::flagged() const {
  return !verdict.d_pass || !report.stable || (verdict.sigma_pass && !*verdict.sigma_pass);
}

std::vector<TrialRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_sweep needs trials >= 1");
  const auto c = get_case(cfg.case_id);
  const auto a = application_space(cfg.case_id, cfg.n);
  const bool explicit_elem = cfg.alpha || cfg.beta;
  if (!explicit_elem && a.deg_alpha < 0 && a.deg_beta < 0)
    throw std::invalid_argument("integral space of case " + cfg.case_id + " at n = " + std::to_string(cfg.n) + " is {0}");
  if (explicit_elem && !cfg.raw) {
    if (cfg.alpha && cfg.alpha->degree() > a.deg_alpha)
      throw std::invalid_argument("alpha has degree " + std::to_string(cfg.alpha->degree()) + ", expected <= " +
                                  std::to_string(a.deg_alpha) + " (use raw to override)");
    if (cfg.beta && cfg.beta->degree() > a.deg_beta)
      throw std::invalid_argument("beta has degree " + std::to_string(cfg.beta->degree()) + ", expected <= " +
                                  std::to_string(a.deg_beta) + " (use raw to override)");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    fnv1a(cfg.case_id), static_cast<std::uint32_t>(cfg.n)};
  std::mt19937_64 rng(seq);
  const bool exact = !explicit_elem && exact_reduction(cfg.case_id, cfg.n, {}).has_value();
  const auto idx = exact ? spanning_set(cfg.case_id, cfg.n) : std::vector<MomentIndex>{};
  const int trials = explicit_elem ? 1 : cfg.trials;
  const int bound = a.dim + a.accuracy - 1;
  std::vector<TrialRow> rows;
  for (int trial = 0; trial < trials; ++trial) {
    TrialRow row;
    row.case_id = cfg.case_id;
    row.n = cfg.n;
    row.trial = trial;
    if (explicit_elem) {
      row.alpha = cfg.alpha.value_or(RatPoly());
      row.beta = cfg.beta.value_or(RatPoly());
    } else {
      do {
        if (exact) {
          std::tie(row.alpha, row.beta) = random_exact(cfg.case_id, cfg.n, idx, rng);
        } else {
          row.alpha = random_poly(a.deg_alpha, rng);
          row.beta = random_poly(a.deg_beta, rng);
        }
      } while (row.alpha.is_zero() && row.beta.is_zero());
    }
    row.elem = table_element(c.system, row.alpha, row.beta, a.s);
    row.report = count_zeros_argument(row.elem, cfg.contour, bound, cfg.stability);
    if (cfg.sigma) {
      const auto ic = count_zeros_sigma(row.elem, c);
      row.sigma_zeros = ic.zeros;
      row.sigma_roots = ic.roots;
    }
    row.verdict = check_bound(row.report, a, row.sigma_zeros);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string count_csv(const std::vector<TrialRow>& rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : rows)
    out.push_back({r.case_id, std::to_string(r.n), std::to_string(r.trial), std::to_string(r.report.zero_count),
                   std::to_string(r.verdict.d_bound), r.verdict.d_pass ? "1" : "0", format_double(r.report.R),
                   format_double(r.report.r), r.report.stable ? "1" : "0"});
  return csv_text({"case", "n", "trial", "zero_count", "bound", "pass", "R", "r", "stable"}, out);
}

std::string sigma_csv(const std::vector<TrialRow>& rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : rows) {
    if (!r.sigma_zeros) continue;
    out.push_back({r.case_id, std::to_string(r.n), std::to_string(r.trial), std::to_string(*r.sigma_zeros),
                   std::to_string(r.verdict.sigma_bound), *r.verdict.sigma_pass ? "1" : "0"});
  }
  return csv_text({"case", "n", "trial", "sigma_zeros", "sigma_bound", "sigma_pass"}, out);
}

std::string contour_phase_svg(const TrialRow& row, const ContourSpec& spec) {
  const auto tr = contour_trace(row.elem.lambda, row.elem.omega, spec);
  SvgSeries s{"arg I / 2pi", {}, {}};
  double acc = 0.0;
  Complex prev{};
  for (std::size_t k = 0; k < tr->samples.size(); ++k) {
    const auto& p = tr->samples[k];
    const Complex v = row.elem.P.eval(p.t) * p.x + row.elem.Q.eval(p.t) * p.y;
    if (k == 0)
      acc = std::arg(v);
    else
      acc += std::arg(v / prev);
    prev = v;
    s.x.push_back(static_cast<double>(k));
    s.y.push_back(acc / (2 * M_PI));
  }
  std::vector<double> marks;
  for (std::size_t i = 1; i + 1 < tr->segment_start.size(); ++i) marks.push_back(static_cast<double>(tr->segment_start[i]));
  return svg_plot("case " + row.case_id + ", n = " + std::to_string(row.n) + ", trial " + std::to_string(row.trial) +
                      ": " + std::to_string(row.report.zero_count) + " zeros (bound " +
                      std::to_string(row.verdict.d_bound) + ")",
                  "contour sample (segments: inner arc, upper cut, outer circle, lower cut, inner arc)",
                  "accumulated argument / 2pi", {s}, marks);
}

std::string sigma_graph_svg(const TrialRow& row) {
  const auto c = get_case(row.case_id);
  const auto span = sigma_span(c);
  const double a = span.b <= 0.0 ? span.a : std::max(span.a, 1e-6);
  const double b = span.b <= 0.0 ? std::min(span.b, -1e-9) : std::min(span.b, 1.0 - 1e-6);
  std::vector<double> ts;
  const int m = 400;
  for (int k = 0; k < m; ++k) {
    const double u = static_cast<double>(k) / (m - 1);
    ts.push_back(span.b <= 0.0 ? -std::exp(std::log(-b) + (std::log(-a) - std::log(-b)) * (1.0 - u)) : a + (b - a) * u);
  }
  const auto vals = real_solution(distinguished_germ(row.elem.lambda, row.elem.omega), ts);
  SvgSeries s{"I(t) / max |I|", {}, {}};
  double mx = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double v = row.elem.P.eval(ts[k]) * vals[k][0] + row.elem.Q.eval(ts[k]) * vals[k][1];
    s.x.push_back(ts[k]);
    s.y.push_back(v);
    mx = std::max(mx, std::abs(v));
  }
  if (mx > 0)
    for (auto& v : s.y) v /= mx;
  return svg_plot("case " + row.case_id + ", n = " + std::to_string(row.n) + ", trial " + std::to_string(row.trial) +
                      ": " + std::to_string(row.sigma_zeros.value_or(-1)) + " zeros on the annulus (bound " +
                      std::to_string(row.verdict.sigma_bound) + ")",
                  "t (unit-interval normal form)", "I", {s}, row.sigma_roots);
}

}  // namespace fcheb
