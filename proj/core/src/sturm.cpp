#include "fcheb/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "fcheb/continuation.hpp"

namespace fcheb {

namespace {

using V2 = std::array<double, 2>;
using D2 = std::array<std::array<double, 2>, 2>;

D2 to_d2(const Mat2& m) { return {{{to_double(m(0, 0)), to_double(m(0, 1))}, {to_double(m(1, 0)), to_double(m(1, 1))}}}; }

V2 mul(const D2& a, const V2& v) { return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]}; }

D2 inv(const D2& a) {
  const double d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}

double norm(const V2& v) { return std::hypot(v[0], v[1]); }

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// L(t^j J) = t(t-1) [t^j J'' + 2j t^{j-1} J' + j(j-1) t^{j-2} J]
V2 apply_L(const NormalFormJet& jet, int j) {
  const double t = jet.t;
  const double tj = std::pow(t, j);
  const double tj1 = j >= 1 ? std::pow(t, j - 1) : 0.0;
  const double tj2 = j >= 2 ? std::pow(t, j - 2) : 0.0;
  V2 out{};
  for (int c = 0; c < 2; ++c)
    out[c] = t * (t - 1) * (tj * jet.ddJ[c] + 2.0 * j * tj1 * jet.dJ[c] + j * (j - 1.0) * tj2 * jet.J[c]);
  return out;
}

RatPoly entry_poly(const std::vector<Mat2>& B, int r, int c) {
  std::vector<Rational> coeffs;
  for (const auto& b : B) coeffs.push_back(b(r, c));
  return RatPoly(std::move(coeffs));
}

nlohmann::ordered_json mat_json(const Mat2& m) {
  return nlohmann::ordered_json::array({nlohmann::ordered_json::array({to_string(m(0, 0)), to_string(m(0, 1))}),
                                        nlohmann::ordered_json::array({to_string(m(1, 0)), to_string(m(1, 1))})});
}

}  // namespace

OperatorData operator_data(int k, const Rational& lambda, const Rational& mu, const Rational& omega) {
  if (k < 0) throw std::invalid_argument("operator_data needs k >= 0");
  if (omega == 0) throw std::invalid_argument("operator_data needs omega != 0");
  OperatorData d;
  d.k = k;
  d.omega_odd = (k + lambda) * (k + lambda - 1);
  d.omega_even = (k + mu) * (k + mu - 1);
  d.Omega = Mat2::diag(d.omega_odd, d.omega_even);
  d.R = Rational(k) * Mat2::of(lambda + k - 1, mu * omega, lambda / omega, mu + k - 1);
  return d;
}

double operator_identity_residual(const OperatorData& d, const std::vector<NormalFormJet>& jets) {
  const D2 Om = to_d2(d.Omega), R = to_d2(d.R);
  double worst = 0.0;
  for (const auto& jet : jets) {
    const double t = jet.t;
    const double tk = std::pow(t, d.k);
    const double tk1 = d.k >= 1 ? std::pow(t, d.k - 1) : 0.0;
    const V2 lhs = apply_L(jet, d.k);
    const V2 OmJ = mul(Om, jet.J), RJ = mul(R, jet.J);
    double scale = std::abs(tk) * norm(OmJ) + std::abs(tk1) * norm(RJ);
    if (scale == 0.0) scale = std::abs(tk) * norm(jet.J);
    if (scale == 0.0) continue;
    for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(lhs[c] - (tk * OmJ[c] - tk1 * RJ[c])) / scale);
  }
  return worst;
}

double operator_identity_residual(const HamiltonianCase& c, int k, const std::vector<double>& t_grid,
                                  const QuadOptions& opt) {
  const auto nf = to_normal_form(c.system, NormalForm::k7);
  const auto d = operator_data(k, nf.system.lambda, nf.system.mu, nf.system.omega);
  std::vector<NormalFormJet> jets;
  for (double t : t_grid) jets.push_back(normal_form_jet(c, t, opt));
  return operator_identity_residual(d, jets);
}

EigenFrame eigenframe(int k, const Rational& lambda, const Rational& mu, const Rational& omega) {
  if (k < 0) throw std::invalid_argument("eigenframe needs k >= 0");
  std::vector<OperatorData> ops;
  for (int j = 0; j <= k; ++j) ops.push_back(operator_data(j, lambda, mu, omega));
  EigenFrame f;
  f.k = k;
  f.lambda = lambda;
  f.mu = mu;
  f.omega = omega;
  f.B.assign(static_cast<std::size_t>(k) + 1, Mat2{});
  f.B[static_cast<std::size_t>(k)] = Mat2::identity();
  const Mat2& Omk = ops[static_cast<std::size_t>(k)].Omega;
  for (int j = k - 1; j >= 0; --j) {
    const auto ju = static_cast<std::size_t>(j);
    const Mat2 C = f.B[ju + 1] * ops[ju + 1].R;
    Mat2 Bj;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const Rational gap = ops[ju].Omega(b, b) - Omk(a, a);
        if (gap == 0)
          throw std::domain_error("eigenframe: coincident omega_j (2 lambda is an integer) at j = " + std::to_string(j));
        Bj(a, b) = C(a, b) / gap;
      }
    f.B[ju] = Bj;
  }
  f.x_P = entry_poly(f.B, 0, 0);
  f.x_Q = entry_poly(f.B, 0, 1);
  f.y_P = entry_poly(f.B, 1, 0);
  f.y_Q = entry_poly(f.B, 1, 1);
  f.eigen_x = Omk(0, 0);
  f.eigen_y = Omk(1, 1);
  return f;
}

Rational sylvester_defect(const EigenFrame& f) {
  const auto Omk = operator_data(f.k, f.lambda, f.mu, f.omega).Omega;
  Rational worst(0);
  for (int j = 0; j < f.k; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const Mat2 D = f.B[ju] * operator_data(j, f.lambda, f.mu, f.omega).Omega - Omk * f.B[ju] -
                   f.B[ju + 1] * operator_data(j + 1, f.lambda, f.mu, f.omega).R;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) worst = std::max(worst, abs_q(D(a, b)));
  }
  return worst;
}

EigenResidual eigen_residual(const EigenFrame& f, const std::vector<NormalFormJet>& jets) {
  std::vector<D2> B;
  for (const auto& b : f.B) B.push_back(to_d2(b));
  const std::array<double, 2> eig{to_double(f.eigen_x), to_double(f.eigen_y)};
  EigenResidual out;
  for (const auto& jet : jets) {
    std::vector<V2> Lj;
    for (int j = 0; j <= f.k; ++j) Lj.push_back(apply_L(jet, j));
    for (int r = 0; r < 2; ++r) {
      double L = 0.0, val = 0.0, scale_L = 0.0, scale_v = 0.0;
      for (int j = 0; j <= f.k; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const double tj = std::pow(jet.t, j);
        for (int c = 0; c < 2; ++c) {
          L += B[ju][r][c] * Lj[ju][c];
          val += B[ju][r][c] * tj * jet.J[c];
          scale_L += std::abs(B[ju][r][c] * Lj[ju][c]);
          scale_v += std::abs(B[ju][r][c] * tj * jet.J[c]);
        }
      }
      const double scale = scale_L + std::abs(eig[r]) * scale_v;
      const double res = scale == 0.0 ? 0.0 : std::abs(L - eig[r] * val) / scale;
      (r == 0 ? out.x : out.y) = std::max(r == 0 ? out.x : out.y, res);
    }
  }
  return out;
}

std::vector<NormalFormJet> germ_jets(const Rational& lambda, const Rational& omega, const std::vector<double>& ts) {
  for (double t : ts)
    if (t == 0.0 || t == 1.0) throw std::invalid_argument("germ_jets: t at a singular point");
  const auto germ = distinguished_germ(lambda, omega);
  const auto vals = real_solution(germ, ts);
  const auto sys = form7_system(lambda, omega);
  const D2 a0 = to_d2(sys.a0), a1 = to_d2(sys.a1);
  std::vector<NormalFormJet> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    NormalFormJet jet;
    jet.t = ts[i];
    jet.J = vals[i];
    D2 A{};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) A[a][b] = a0[a][b] + ts[i] * a1[a][b];
    const D2 Ai = inv(A);
    if (std::abs(ts[i]) <= 0.5) {
      const auto d = germ.eval_derivative(0, Complex(ts[i], 0.0));
      jet.dJ = {d[0].real(), d[1].real()};
    } else {
      jet.dJ = mul(Ai, jet.J);
    }
    // J'' = (A^{-1})' J + A^{-1} J' with (A^{-1})' = -A^{-1} a1 A^{-1}
    const V2 u = mul(Ai, mul(a1, mul(Ai, jet.J)));
    const V2 v = mul(Ai, jet.dJ);
    jet.ddJ = {v[0] - u[0], v[1] - u[1]};
    out.push_back(jet);
  }
  return out;
}

RealZeroVerdict real_zero_bound_check(const VSpaceElement& elem, double K) {
  if (is_integer(2 * elem.lambda)) throw std::invalid_argument("real_zero_bound_check needs 2 lambda not an integer");
  if (!(K > 1.0)) throw std::invalid_argument("real_zero_bound_check needs K > 1");
  const auto ic = count_zeros_negative(elem, -64.0 * K, -1e-9);
  RealZeroVerdict out;
  out.unresolved = ic.unresolved;
  out.roots = ic.roots;
  for (double t : ic.roots) (t >= -K ? out.count : out.tail_zeros) += 1;
  out.bound = std::max(elem.P.degree(), 0) + std::max(elem.Q.degree(), 0) + 1;
  const Rational mu = 2 - elem.lambda;
  if (abs_q(elem.lambda - mu) < 1) out.chebyshev_bound = dim_vs(elem.lambda, mu, elem.s).dim - 1;
  const int total = out.count + out.tail_zeros;
  out.pass = total <= out.bound && (!out.chebyshev_bound || total <= *out.chebyshev_bound);
  return out;
}

bool sturm_eligible(const HamiltonianCase& c) {
  return !is_integer(2 * to_normal_form(c.system, NormalForm::k7).system.lambda);
}

std::vector<RealZeroTrial> real_zero_sweep(const HamiltonianCase& c, int trials, std::uint64_t seed, double K) {
  if (trials < 1) throw std::invalid_argument("real_zero_sweep needs trials >= 1");
  const auto nf = to_normal_form(c.system, NormalForm::k7);
  const Rational lambda = nf.system.lambda, omega = nf.system.omega;
  if (is_integer(2 * lambda)) throw std::invalid_argument("real_zero_sweep needs 2 lambda not an integer");
  const Rational lstar = lambda_star(lambda);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_r(0, 5), pick_c(-9, 9);
  std::map<int, std::vector<VSpaceElement>> bases;
  std::vector<RealZeroTrial> out;
  for (int trial = 0; trial < trials; ++trial) {
    const int r = pick_r(rng);
    const Rational s = lstar + Rational(r, 2);
    auto it = bases.find(r);
    if (it == bases.end()) it = bases.emplace(r, basis(lambda, s, omega)).first;
    const auto& B = it->second;
    RealZeroTrial row;
    row.case_id = c.id;
    row.trial = trial;
    row.s = s;
    row.dim = static_cast<int>(B.size());
    row.mirrored = c.system.h1 < c.system.h0;
    if (B.empty()) {
      row.verdict.pass = true;
      out.push_back(row);
      continue;
    }
    std::vector<int> coef(B.size());
    do {
      for (auto& v : coef) v = pick_c(rng);
    } while (std::all_of(coef.begin(), coef.end(), [](int v) { return v == 0; }));
    VSpaceElement e;
    e.lambda = lambda;
    e.omega = omega;
    e.s = s;
    for (std::size_t i = 0; i < B.size(); ++i) {
      e.P += Rational(coef[i]) * B[i].P;
      e.Q += Rational(coef[i]) * B[i].Q;
    }
    e.growth = growth_exponent(e.P, e.Q, lambda, omega);
    row.verdict = real_zero_bound_check(e, K);
    out.push_back(row);
  }
  return out;
}

nlohmann::ordered_json operator_data_to_json(const OperatorData& d) {
  nlohmann::ordered_json j;
  j["k"] = d.k;
  j["omega_odd"] = to_string(d.omega_odd);
  j["omega_even"] = to_string(d.omega_even);
  j["Omega"] = mat_json(d.Omega);
  j["R"] = mat_json(d.R);
  return j;
}

nlohmann::ordered_json eigenframe_to_json(const EigenFrame& f) {
  nlohmann::ordered_json j;
  j["k"] = f.k;
  j["lambda"] = to_string(f.lambda);
  j["mu"] = to_string(f.mu);
  j["omega"] = to_string(f.omega);
  auto& B = j["B"] = nlohmann::ordered_json::array();
  for (const auto& b : f.B) B.push_back(mat_json(b));
  j["x_k"] = {{"P", f.x_P.str()}, {"Q", f.x_Q.str()}, {"eigenvalue", to_string(f.eigen_x)}};
  j["y_k"] = {{"P", f.y_P.str()}, {"Q", f.y_Q.str()}, {"eigenvalue", to_string(f.eigen_y)}};
  j["sylvester_defect"] = to_string(sylvester_defect(f));
  return j;
}

}  // namespace fcheb
