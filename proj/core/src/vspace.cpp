#include "fcheb/vspace.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "fcheb/picard_fuchs.hpp"

namespace fcheb {

namespace {

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

int ceil_i(const Rational& q) { return static_cast<int>(-floor_i64(-q)); }

std::shared_ptr<const SolutionGerm> infinity_germ(const Rational& lambda, const Rational& omega, int trunc) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const SolutionGerm>> cache;
  const std::string key = to_string(lambda) + "|" + to_string(omega);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->trunc >= trunc) return it->second;
  auto g = std::make_shared<const SolutionGerm>(
      local_germ(form7_system(lambda, omega), GermBase::kInfinity, std::max(trunc, 40)));
  cache[key] = g;
  return g;
}

void check_lambda(const Rational& lambda) {
  if (lambda == 0 || lambda == 1 || lambda == 2) throw std::invalid_argument("lambda must not be 0, 1 or 2");
}

// Coefficient of t^(f.exponent + m) in P x_f + Q y_f (non-logarithmic part).
Rational coef_at(const FrameSolution& f, const RatPoly& P, const RatPoly& Q, int m) {
  Rational r{0};
  const int d = std::max(P.degree(), Q.degree());
  const int trunc = static_cast<int>(f.x.size()) - 1;
  for (int i = std::max(0, m); i <= d; ++i) {
    const int k = i - m;
    if (k > trunc) throw std::logic_error("frame expansion truncated too early");
    const Rational& p = P.coeff(i);
    const Rational& q = Q.coeff(i);
    if (p != 0) r += p * f.x[static_cast<std::size_t>(k)];
    if (q != 0) r += q * f.y[static_cast<std::size_t>(k)];
  }
  return r;
}

// Leading exponent of the non-logarithmic part of P x_f + Q y_f.
std::optional<Rational> leading(const FrameSolution& f, const RatPoly& P, const RatPoly& Q) {
  const int d = std::max(P.degree(), Q.degree());
  const int trunc = static_cast<int>(f.x.size()) - 1;
  for (int m = d; m >= d - trunc; --m)
    if (coef_at(f, P, Q, m) != 0) return f.exponent + m;
  return std::nullopt;
}

std::vector<Rational> pq_vector(const RatPoly& P, const RatPoly& Q, int D) {
  std::vector<Rational> v(2 * static_cast<std::size_t>(D + 1), Rational(0));
  for (int i = 0; i <= D; ++i) {
    v[static_cast<std::size_t>(i)] = P.coeff(i);
    v[static_cast<std::size_t>(D + 1 + i)] = Q.coeff(i);
  }
  return v;
}

RatPoly shift_up(const RatPoly& p, int k) { return p * RatPoly::monomial(k); }

int rank_bound(const Rational& lambda, const Rational& s) {
  const Rational mu = 2 - lambda;
  return static_cast<int>(floor_i64(s - std::min(lambda, mu))) + 3;
}

}  // namespace

bool operator<(const Growth& a, const Growth& b) {
  if (a.exponent != b.exponent) return a.exponent < b.exponent;
  return !a.log && b.log;
}

DimVs dim_vs(const Rational& lambda, const Rational& mu, const Rational& s) {
  if (lambda + mu != 2) throw std::invalid_argument("dim_vs: lambda + mu must equal 2");
  if (s < lambda_star(lambda)) throw std::invalid_argument("dim_vs: s below lambda*");
  if (is_integer(lambda)) return {std::max(0, static_cast<int>(floor_i64(s)) - 1), true};
  if (s == mu && mu == Rational(1, 2)) return {0, false};
  if (is_integer(lambda - mu) && is_integer(s - Rational(1, 2)))
    return {static_cast<int>(floor_i64(2 * s)) - 1, false};
  return {static_cast<int>(floor_i64(s - lambda) + floor_i64(s - mu)) + 2, false};
}

Growth growth_exponent(const RatPoly& P, const RatPoly& Q, const Rational& lambda, const Rational& omega) {
  if (P.is_zero() && Q.is_zero()) throw std::invalid_argument("growth_exponent: P = Q = 0");
  check_lambda(lambda);
  const int d = std::max(P.degree(), Q.degree());
  const int gap = ceil_i(abs_q(lambda - (2 - lambda)));
  const auto germ = infinity_germ(lambda, omega, d + 2 * gap + 16);
  std::optional<Growth> best;
  auto offer = [&](const Growth& g) {
    if (!best || *best < g) best = g;
  };
  for (const auto& f : germ->frame) {
    if (auto e = leading(f, P, Q)) offer({*e, false});
    if (f.log_partner >= 0 && f.log_coef != 0) {
      const auto& partner = germ->frame[static_cast<std::size_t>(f.log_partner)];
      if (auto e = leading(partner, P, Q)) offer({*e, true});
    }
  }
  if (!best) throw std::logic_error("growth_exponent: expansion vanished to the truncation order");
  return *best;
}

std::array<RatPoly, 2> to_unit_frame(const RatPoly& P, const RatPoly& Q, const FuchsianSystem& sys) {
  const auto nf = to_normal_form(sys, NormalForm::k7);
  const Mat2 ti = nf.transform.T.inverse();
  const RatPoly p = P.compose_affine(nf.transform.shift, nf.transform.scale);
  const RatPoly q = Q.compose_affine(nf.transform.shift, nf.transform.scale);
  return {p * ti(0, 0) + q * ti(1, 0), p * ti(0, 1) + q * ti(1, 1)};
}

Growth growth_exponent(const RatPoly& P, const RatPoly& Q, const FuchsianSystem& sys) {
  const auto nf = to_normal_form(sys, NormalForm::k7);
  const auto pq = to_unit_frame(P, Q, sys);
  return growth_exponent(pq[0], pq[1], nf.system.lambda, nf.system.omega);
}

VSpaceElement table_element(const FuchsianSystem& sys, const RatPoly& alpha, const RatPoly& beta, const Rational& s) {
  const auto nf = to_normal_form(sys, NormalForm::k7);
  const auto pq = to_unit_frame(alpha, beta, sys);
  VSpaceElement e{pq[0], pq[1], nf.system.lambda, nf.system.omega, s, {}, std::nullopt};
  if (!alpha.is_zero() || !beta.is_zero()) e.growth = growth_exponent(pq[0], pq[1], nf.system.lambda, nf.system.omega);
  return e;
}

Rational dominant_coefficient(const RatPoly& P, const RatPoly& Q, const Rational& lambda, const Rational& omega) {
  check_lambda(lambda);
  const int d = std::max(P.degree(), Q.degree());
  const auto germ = infinity_germ(lambda, omega, d + 4);
  const std::size_t dom = lambda > 2 - lambda ? 0 : 1;
  return coef_at(germ->frame[dom], P, Q, 0);
}

LadderElement ladder_element(const Rational& lambda, int m, const Rational& omega) {
  if (m < 1) throw std::invalid_argument("ladder_element: m must be positive");
  check_lambda(lambda);
  const bool x_dominant = lambda > 2 - lambda;
  const RatPoly one = RatPoly::constant(1);
  const RatPoly zero;
  RatPoly P = x_dominant ? zero : one;
  RatPoly Q = x_dominant ? one : zero;
  LadderElement out;
  out.m = m;
  for (int k = 1; k <= m; ++k) {
    P = shift_up(P, 1);
    Q = shift_up(Q, 1);
    const Rational a = dominant_coefficient(P, Q, lambda, omega);
    if (x_dominant)
      P -= one * a;
    else
      Q -= one * a;
    out.alphas.push_back(a);
  }
  out.P = P;
  out.Q = Q;
  return out;
}

std::string BasisTag::str() const {
  const std::string t = power == 0 ? "" : power == 1 ? "t*" : "t^" + std::to_string(power) + "*";
  switch (kind) {
    case BasisKind::kMonomialX: return t + "x";
    case BasisKind::kMonomialY: return t + "y";
    case BasisKind::kLadder: return t + "z_" + std::to_string(m);
  }
  return t;
}

int exact_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  std::size_t r0 = 0;
  for (std::size_t c = 0; c < cols && r0 < rows.size(); ++c) {
    std::size_t piv = r0;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r0]);
    for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[r0][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[r0][k];
    }
    ++r0;
    ++rank;
  }
  return rank;
}

std::vector<VSpaceElement> basis(const Rational& lambda, const Rational& s, const Rational& omega) {
  const Rational mu = 2 - lambda;
  if (is_integer(lambda)) throw std::invalid_argument("basis: integer lambda");
  dim_vs(lambda, mu, s);  // precondition checks
  const int D = rank_bound(lambda, s);

  std::vector<VSpaceElement> out;
  std::vector<std::vector<Rational>> rows;
  auto consider = [&](const RatPoly& P, const RatPoly& Q, const BasisTag& tag) {
    if (std::max(P.degree(), Q.degree()) > D) return;
    const Growth g = growth_exponent(P, Q, lambda, omega);
    if (!g.within(s)) return;
    rows.push_back(pq_vector(P, Q, D));
    if (exact_rank(rows) < static_cast<int>(rows.size())) {
      rows.pop_back();
      return;
    }
    out.push_back({P, Q, lambda, omega, s, g, tag});
  };

  const RatPoly zero;
  for (int k = 0; k <= D; ++k) consider(RatPoly::monomial(k), zero, {BasisKind::kMonomialX, k, 0});
  for (int l = 0; l <= D; ++l) consider(zero, RatPoly::monomial(l), {BasisKind::kMonomialY, l, 0});
  for (int m = 1; m <= D; ++m) {
    const LadderElement z = ladder_element(lambda, m, omega);
    for (int j = 0; j + m <= D; ++j)
      consider(shift_up(z.P, j), shift_up(z.Q, j), {BasisKind::kLadder, j, m});
  }
  return out;
}

int rank_oracle_dim(const Rational& lambda, const Rational& s, const Rational& omega) {
  check_lambda(lambda);
  const int D = rank_bound(lambda, s);
  const Rational mu = 2 - lambda;
  const int depth = D - static_cast<int>(floor_i64(s - std::max(lambda, mu))) + 2;
  const auto germ = infinity_germ(lambda, omega, depth);

  const int unknowns = 2 * (D + 1);
  std::vector<std::vector<Rational>> rows;
  // Row of the coefficient of t^(f.exponent + m) as a linear form in (p_0..p_D, q_0..q_D).
  auto add_row = [&](const FrameSolution& f, int m) {
    std::vector<Rational> row(static_cast<std::size_t>(unknowns), Rational(0));
    for (int i = std::max(0, m); i <= D; ++i) {
      const auto k = static_cast<std::size_t>(i - m);
      row[static_cast<std::size_t>(i)] = f.x.at(k);
      row[static_cast<std::size_t>(D + 1 + i)] = f.y.at(k);
    }
    rows.push_back(std::move(row));
  };
  for (const auto& f : germ->frame) {
    for (int m = static_cast<int>(floor_i64(s - f.exponent)) + 1; m <= D; ++m) add_row(f, m);
    if (f.log_partner >= 0 && f.log_coef != 0) {
      const auto& partner = germ->frame[static_cast<std::size_t>(f.log_partner)];
      if (is_integer(s - partner.exponent)) add_row(partner, static_cast<int>(floor_i64(s - partner.exponent)));
    }
  }
  return unknowns - exact_rank(std::move(rows));
}

int evaluation_rank(const std::vector<VSpaceElement>& elems, int points, std::uint64_t seed, double rel_tol) {
  if (elems.empty()) return 0;
  const auto& e0 = elems.front();
  const auto germ = local_germ(form7_system(e0.lambda, e0.omega), GermBase::kZero, 80);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.02, 0.6);
  Eigen::MatrixXd M(points, static_cast<Eigen::Index>(elems.size()));
  for (int i = 0; i < points; ++i) {
    const double t = uni(rng);
    const auto xy = germ.eval(0, Complex(t, 0.0));
    for (std::size_t j = 0; j < elems.size(); ++j)
      M(i, static_cast<Eigen::Index>(j)) = elems[j].P.eval(t) * xy[0].real() + elems[j].Q.eval(t) * xy[1].real();
  }
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    const double nrm = M.col(j).norm();
    if (nrm > 0) M.col(j) /= nrm;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rel_tol * sv(0)) ++rank;
  return rank;
}

// ---------------------------------------------------------------------------

namespace {

int fdiv(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string domain_text(const FuchsianSystem& sys) {
  const std::string h1 = to_string(sys.h1);
  return sys.cut == CutDirection::kRight ? "C \\ [" + h1 + ", +inf)" : "C \\ (-inf, " + h1 + "]";
}

}  // namespace

ApplicationSpace application_space(std::string_view case_id, int n) {
  const HamiltonianCase c = get_case(case_id);
  const std::string id(case_id);
  if (n < (id == "8" ? 0 : 1)) throw std::invalid_argument("application_space: n out of range");
  ApplicationSpace a;
  a.case_id = id;
  a.n = n;
  a.domain = domain_text(c.system);
  const Rational half(1, 2);
  if (id == "1" || id == "2") {
    a.deg_alpha = fdiv(n - 1, 2);
    a.deg_beta = fdiv(n - 2, 2);
    a.dim = n;
    a.s = Rational(n + 1, 2);
  } else if (id == "3") {
    a.deg_alpha = fdiv(n - 1, 3);
    a.deg_beta = fdiv(n - 3, 3);
    a.dim = fdiv(2 * n + 1, 3);
    a.s = Rational(n, 3) + half;
  } else if (id == "4" || id == "5") {
    a.deg_alpha = fdiv(n - 1, 2);
    a.deg_beta = fdiv(n - 3, 2);
    a.dim = 2 * fdiv(n - 1, 2) + 1;
    a.s = fdiv(n + 1, 2);
  } else if (id == "6" || id == "7") {
    a.deg_alpha = n <= 2 ? 0 : fdiv(n - 3, 2);
    a.deg_beta = n <= 2 ? -1 : fdiv(n - 3, 2);
    a.dim = fdiv(n - 1, 2) + fdiv(n - 1, 4) + 1;
    a.s = n <= 2 ? Rational(1) : Rational(fdiv(n - 1, 2)) + half;
    a.accuracy = n <= 6 ? 1 : fdiv(n + 1, 4);
    a.first_strict = true;
  } else if (id == "8") {
    // The first catalogued form carries the larger power of x.
    if (n <= 2) {
      a.deg_alpha = 1;
      a.deg_beta = 0;
      a.s = Rational(7, 4);
    } else if (n <= 4) {
      a.deg_alpha = 2;
      a.deg_beta = 1;
      a.h_power = 1;
      a.s = Rational(11, 4);
    } else {
      a.deg_alpha = n - 2;
      a.deg_beta = n - 3;
      a.h_power = n - 3;
      a.s = Rational(n) - Rational(5, 4);
    }
    a.dim = n + 1;
    static const int early[] = {3, 2, 1, 2};
    a.accuracy = n <= 3 ? early[n] : n - 3;
  } else {
    a.deg_alpha = fdiv(n - 2, 4);
    a.deg_beta = fdiv(n - 4, 4);
    a.dim = n / 2;
    a.s = Rational(n + 1, 4);
  }
  const auto& sys = c.system;
  if (a.s >= lambda_star(sys.lambda)) a.dim_vs = dim_vs(sys.lambda, sys.mu, a.s).dim;
  return a;
}

nlohmann::ordered_json application_space_to_json(const ApplicationSpace& a) {
  nlohmann::ordered_json j;
  j["case"] = a.case_id;
  j["n"] = a.n;
  j["deg_alpha"] = a.deg_alpha;
  j["deg_beta"] = a.deg_beta;
  j["dim"] = a.dim;
  j["s"] = to_string(a.s);
  j["dim_vs"] = a.dim_vs ? nlohmann::ordered_json(*a.dim_vs) : nlohmann::ordered_json(nullptr);
  j["accuracy"] = a.accuracy;
  j["h_power"] = a.h_power;
  j["first_strict"] = a.first_strict;
  j["domain"] = a.domain;
  return j;
}

nlohmann::ordered_json application_spaces_report(int n_max) {
  nlohmann::ordered_json out;
  out["schema"] = 1;
  auto& rows = out["spaces"] = nlohmann::ordered_json::array();
  for (const auto& id : case_ids())
    for (int n = 1; n <= n_max; ++n) rows.push_back(application_space_to_json(application_space(id, n)));
  return out;
}

}  // namespace fcheb
