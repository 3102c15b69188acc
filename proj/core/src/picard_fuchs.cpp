#include "fcheb/picard_fuchs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

namespace fcheb {

namespace {

using D2 = std::array<std::array<double, 2>, 2>;
using V2 = std::array<double, 2>;
using Series = std::vector<Rational>;

D2 to_d2(const Mat2& m) { return {{{to_double(m(0, 0)), to_double(m(0, 1))}, {to_double(m(1, 0)), to_double(m(1, 1))}}}; }

D2 inv(const D2& a) {
  const double d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}

D2 mul(const D2& a, const D2& b) {
  D2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

V2 mul(const D2& a, const V2& v) { return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]}; }

double norm(const V2& v) { return std::hypot(v[0], v[1]); }

// y = (lambda (2t - 1) x - 2 t (t - 1) x') / (mu omega) in the local variable u = t - base,
// where 2t - 1 = 2u + s and t(t - 1) = u^2 + s u. `extra` is added to x' before use.
Series y_from_x(const Series& x, const Series& extra_dx, int s, const Rational& lam, const Rational& mu,
                const Rational& omega) {
  const std::size_t n = x.size();
  Series dx(n, Rational(0));
  for (std::size_t k = 0; k + 1 < n; ++k) dx[k] = x[k + 1] * static_cast<int>(k + 1);
  for (std::size_t k = 0; k < n; ++k) dx[k] += extra_dx[k];
  Series y(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    Rational v = lam * s * x[k];
    if (k >= 1) v += 2 * lam * x[k - 1];
    // -2 (u^2 + s u) dx
    if (k >= 1) v -= 2 * s * dx[k - 1];
    if (k >= 2) v -= 2 * dx[k - 2];
    y[k] = v / (mu * omega);
  }
  return y;
}

SolutionGerm finite_germ(const FuchsianSystem& sys, GermBase base, int trunc) {
  const int s = base == GermBase::kZero ? -1 : 1;
  const Rational& lam = sys.lambda;
  const Rational& mu = sys.mu;
  const Rational c = lam * (lam - 1);
  const std::size_t n = static_cast<std::size_t>(trunc) + 1;

  Series a(n, Rational(0));
  a[1] = 1;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Rational kk(static_cast<long long>(k));
    a[k + 1] = (c - kk * (kk - 1)) * a[k] / (s * kk * (kk + 1));
  }
  const Rational kappa = s * c;
  auto d = [&](long long m) -> Rational {
    if (m < 0 || static_cast<std::size_t>(m + 1) >= n) return Rational(0);
    return (2 * m + 1) * a[static_cast<std::size_t>(m + 1)];
  };
  Series b(n, Rational(0));
  b[0] = 1;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    const long long mm = static_cast<long long>(m);
    b[m + 1] = ((c - Rational(mm * (mm - 1))) * b[m] - kappa * (d(mm - 1) + s * d(mm))) / Rational(s * mm * (mm + 1));
  }

  SolutionGerm g;
  g.base = base;
  g.lambda = lam;
  g.mu = mu;
  g.omega = sys.omega;
  g.trunc = trunc;
  FrameSolution fa;
  fa.exponent = 0;
  fa.x = a;
  fa.y = y_from_x(a, Series(n, Rational(0)), s, lam, mu, sys.omega);
  // Non-log part of x' for the log solution: kappa X / u + B'.
  Series extra(n, Rational(0));
  for (std::size_t k = 0; k + 1 < n; ++k) extra[k] = kappa * a[k + 1];
  FrameSolution fb;
  fb.exponent = 0;
  fb.x = b;
  fb.y = y_from_x(b, extra, s, lam, mu, sys.omega);
  fb.log_coef = kappa;
  fb.log_partner = 0;
  g.frame = {fa, fb};

  g.radius = 1.0;
  for (std::size_t k = n - 1; k >= 2; --k) {
    if (a[k] != 0 && a[k - 1] != 0) {
      g.radius = std::abs(to_double(a[k - 1] / a[k]));
      break;
    }
  }
  return g;
}

struct InfSolution {
  std::vector<std::array<Rational, 2>> v;
  Rational gamma{0};
  bool resonant = false;
};

// Frobenius recursion (I - (rho - k) A1) v_k = (rho - k + 1) A0 v_{k-1} [+ gamma (A1 w_{k-d} + A0 w_{k-d-1})].
InfSolution inf_solution(const Mat2& A0, const Mat2& A1, const Rational& rho, int comp, int trunc,
                         const InfSolution* partner, long long gap) {
  InfSolution out;
  out.v.assign(static_cast<std::size_t>(trunc) + 1, {Rational(0), Rational(0)});
  out.v[0][comp] = 1;
  auto apply = [](const Mat2& m, const std::array<Rational, 2>& x) {
    return std::array<Rational, 2>{m(0, 0) * x[0] + m(0, 1) * x[1], m(1, 0) * x[0] + m(1, 1) * x[1]};
  };
  auto w = [&](long long j) -> std::array<Rational, 2> {
    if (!partner || j < 0 || j >= static_cast<long long>(partner->v.size())) return {Rational(0), Rational(0)};
    return partner->v[static_cast<std::size_t>(j)];
  };
  for (int k = 1; k <= trunc; ++k) {
    const Rational e = rho - k;
    auto rhs = apply(A0, out.v[k - 1]);
    rhs[0] *= e + 1;
    rhs[1] *= e + 1;
    std::array<Rational, 2> grhs{Rational(0), Rational(0)};
    if (partner) {
      const auto p1 = apply(A1, w(k - gap));
      const auto p0 = apply(A0, w(k - gap - 1));
      grhs = {p1[0] + p0[0], p1[1] + p0[1]};
    }
    const std::array<Rational, 2> diag{1 - e * A1(0, 0), 1 - e * A1(1, 1)};
    if (partner && k == gap) {
      for (int i = 0; i < 2; ++i)
        if (diag[i] == 0) {
          if (grhs[i] == 0) throw std::logic_error("resonant germ at infinity: log coefficient undetermined");
          out.gamma = -rhs[i] / grhs[i];
          out.resonant = true;
        }
    }
    for (int i = 0; i < 2; ++i) {
      const Rational r = rhs[i] + out.gamma * grhs[i];
      if (diag[i] == 0) {
        if (r != 0) throw std::logic_error("resonant germ at infinity: inconsistent recursion");
        out.v[k][i] = 0;
      } else {
        out.v[k][i] = r / diag[i];
      }
    }
  }
  return out;
}

SolutionGerm infinite_germ(const FuchsianSystem& sys, int trunc) {
  const Rational& lam = sys.lambda;
  const Rational& mu = sys.mu;
  const Mat2 A1 = Mat2::diag(1 / lam, 1 / mu);
  const Mat2 A0 = Mat2::of(-1 / (2 * lam), sys.omega / (2 * lam), 1 / (2 * mu * sys.omega), -1 / (2 * mu));
  const Rational diff = lam - mu;
  const bool integral_gap = is_integer(diff);

  InfSolution sl, sm;
  if (integral_gap && diff > 0) {
    sm = inf_solution(A0, A1, mu, 1, trunc, nullptr, 0);
    sl = inf_solution(A0, A1, lam, 0, trunc, &sm, floor_i64(diff));
  } else if (integral_gap && diff < 0) {
    sl = inf_solution(A0, A1, lam, 0, trunc, nullptr, 0);
    sm = inf_solution(A0, A1, mu, 1, trunc, &sl, floor_i64(-diff));
  } else {
    sl = inf_solution(A0, A1, lam, 0, trunc, nullptr, 0);
    sm = inf_solution(A0, A1, mu, 1, trunc, nullptr, 0);
  }

  SolutionGerm g;
  g.base = GermBase::kInfinity;
  g.lambda = lam;
  g.mu = mu;
  g.omega = sys.omega;
  g.trunc = trunc;
  auto frame = [](const InfSolution& s, const Rational& rho, int partner) {
    FrameSolution f;
    f.exponent = rho;
    for (const auto& v : s.v) {
      f.x.push_back(v[0]);
      f.y.push_back(v[1]);
    }
    if (s.resonant) {
      f.log_coef = s.gamma;
      f.log_partner = partner;
    }
    return f;
  };
  g.frame = {frame(sl, lam, 1), frame(sm, mu, 0)};
  if (sl.resonant) g.gamma = sl.gamma;
  if (sm.resonant) g.gamma = sm.gamma;
  if (diff != 1) g.alpha = sl.v[1][1];
  if (diff != -1) g.beta = sm.v[1][0];

  g.radius = 1.0;
  const auto& x = g.frame[0].x;
  for (std::size_t k = x.size() - 1; k >= 2; --k) {
    if (x[k] != 0 && x[k - 1] != 0) {
      g.radius = std::abs(to_double(x[k] / x[k - 1]));
      break;
    }
  }
  return g;
}

}  // namespace

std::array<Complex, 2> SolutionGerm::eval(int k, Complex t) const {
  const FrameSolution& f = frame.at(static_cast<std::size_t>(k));
  std::array<Complex, 2> r{0.0, 0.0};
  if (base == GermBase::kInfinity) {
    const Complex lt = std::log(t);
    for (std::size_t j = 0; j < f.x.size(); ++j) {
      const Complex p = std::exp((to_double(f.exponent) - static_cast<double>(j)) * lt);
      r[0] += to_double(f.x[j]) * p;
      r[1] += to_double(f.y[j]) * p;
    }
    if (f.log_partner >= 0) {
      const auto g = eval(f.log_partner, t);
      r[0] += to_double(f.log_coef) * lt * g[0];
      r[1] += to_double(f.log_coef) * lt * g[1];
    }
    return r;
  }
  const Complex u = base == GermBase::kZero ? t : t - 1.0;
  for (std::size_t j = f.x.size(); j-- > 0;) {
    r[0] = r[0] * u + to_double(f.x[j]);
    r[1] = r[1] * u + to_double(f.y[j]);
  }
  if (f.log_partner >= 0) {
    const auto g = eval(f.log_partner, t);
    const Complex lu = std::log(u);
    r[0] += to_double(f.log_coef) * lu * g[0];
    r[1] += to_double(f.log_coef) * lu * g[1];
  }
  return r;
}

std::array<Complex, 2> SolutionGerm::eval_derivative(int k, Complex t) const {
  const FrameSolution& f = frame.at(static_cast<std::size_t>(k));
  std::array<Complex, 2> r{0.0, 0.0};
  if (base == GermBase::kInfinity) {
    const Complex lt = std::log(t);
    for (std::size_t j = 0; j < f.x.size(); ++j) {
      const double e = to_double(f.exponent) - static_cast<double>(j);
      const Complex p = e * std::exp((e - 1.0) * lt);
      r[0] += to_double(f.x[j]) * p;
      r[1] += to_double(f.y[j]) * p;
    }
    if (f.log_partner >= 0) {
      const auto g = eval(f.log_partner, t);
      const auto dg = eval_derivative(f.log_partner, t);
      for (int i = 0; i < 2; ++i) r[i] += to_double(f.log_coef) * (lt * dg[i] + g[i] / t);
    }
    return r;
  }
  const Complex u = base == GermBase::kZero ? t : t - 1.0;
  for (std::size_t j = f.x.size(); j-- > 1;) {
    r[0] = r[0] * u + to_double(f.x[j]) * static_cast<double>(j);
    r[1] = r[1] * u + to_double(f.y[j]) * static_cast<double>(j);
  }
  if (f.log_partner >= 0) {
    const auto g = eval(f.log_partner, t);
    const auto dg = eval_derivative(f.log_partner, t);
    const Complex lu = std::log(u);
    for (int i = 0; i < 2; ++i) r[i] += to_double(f.log_coef) * (lu * dg[i] + g[i] / u);
  }
  return r;
}

SolutionGerm local_germ(const FuchsianSystem& sys, GermBase base, int trunc) {
  if (trunc < 2) throw std::invalid_argument("germ truncation must be at least 2");
  if (sys.lambda == 0 || sys.lambda == 1 || sys.lambda == 2)
    throw std::invalid_argument("germ needs lambda not in {0, 1, 2}");
  const FuchsianSystem ref = form7_system(sys.lambda, sys.omega);
  if (!(ref.a0 == sys.a0) || !(ref.a1 == sys.a1))
    throw std::invalid_argument("local_germ expects the unit-interval normal form");
  return base == GermBase::kInfinity ? infinite_germ(sys, trunc) : finite_germ(sys, base, trunc);
}

// ---------------------------------------------------------------------------

std::vector<double> default_h_grid(const HamiltonianCase& c, int n) {
  const double lo = to_double(c.sigma_lo);
  const double hi = c.sigma_hi_or(lo + 2.0);
  const double w = hi - lo;
  std::vector<double> out;
  for (int k = 0; k < n; ++k)
    out.push_back(n == 1 ? lo + 0.5 * w : lo + 0.04 * w + 0.92 * w * k / (n - 1));
  return out;
}

double residual_fuchsian(const HamiltonianCase& c, const std::vector<double>& h_grid, const QuadOptions& opt) {
  double worst = 0.0;
  for (double h : h_grid) {
    const auto I = abelian_integrals(c, h, opt);
    const auto dI = abelian_derivatives(c, h, opt);
    const D2 A = c.system.at(h);
    const V2 i{I[0].value, I[1].value};
    const V2 ai = mul(A, V2{dI[0].value, dI[1].value});
    worst = std::max(worst, norm({i[0] - ai[0], i[1] - ai[1]}) / norm(i));
  }
  return worst;
}

std::vector<double> default_t_grid(const HamiltonianCase& c, int n) {
  const auto nf = to_normal_form(c.system, NormalForm::k7);
  const double shift = to_double(nf.transform.shift), scale = to_double(nf.transform.scale);
  std::vector<double> out;
  for (double h : default_h_grid(c, n)) out.push_back((h - shift) / scale);
  return out;
}

NormalFormJet normal_form_jet(const HamiltonianCase& c, double t, const QuadOptions& opt) {
  if (t == 0.0 || t == 1.0) throw std::invalid_argument("t at a singular point");
  const auto nf = to_normal_form(c.system, NormalForm::k7);
  const double shift = to_double(nf.transform.shift), scale = to_double(nf.transform.scale);
  const D2 T = to_d2(nf.transform.T);
  const D2 a0 = to_d2(nf.system.a0), a1 = to_d2(nf.system.a1);
  const double h = shift + scale * t;
  const auto I = abelian_integrals(c, h, opt);
  const auto dI = abelian_derivatives(c, h, opt);
  NormalFormJet jet;
  jet.t = t;
  jet.J = mul(T, V2{I[0].value, I[1].value});
  const V2 dJ = mul(T, V2{dI[0].value, dI[1].value});
  jet.dJ = {scale * dJ[0], scale * dJ[1]};
  D2 A{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) A[i][j] = a0[i][j] + t * a1[i][j];
  const D2 Ai = inv(A);
  D2 dAi = mul(mul(Ai, a1), Ai);
  for (auto& row : dAi)
    for (auto& v : row) v = -v;
  const V2 p = mul(dAi, jet.J), q = mul(Ai, jet.dJ);
  jet.ddJ = {p[0] + q[0], p[1] + q[1]};
  return jet;
}

HypergeometricResidual residual_hypergeometric(const HamiltonianCase& c, const std::vector<double>& t_grid,
                                               const QuadOptions& opt) {
  const auto nf = to_normal_form(c.system, NormalForm::k7);
  const double cl = to_double(nf.system.lambda * (nf.system.lambda - 1));
  const double cm = to_double(nf.system.mu * (nf.system.mu - 1));
  HypergeometricResidual out;
  for (double t : t_grid) {
    const auto jet = normal_form_jet(c, t, opt);
    const V2& J = jet.J;
    const V2& ddJ = jet.ddJ;
    if (J[0] == 0.0 || J[1] == 0.0) throw std::invalid_argument("trivial component in hypergeometric residual");
    out.x = std::max(out.x, std::abs(t * (t - 1) * ddJ[0] - cl * J[0]) / std::abs(J[0]));
    out.y = std::max(out.y, std::abs(t * (t - 1) * ddJ[1] - cm * J[1]) / std::abs(J[1]));
  }
  return out;
}

RatPoly hypergeometric_operator(const RatPoly& x, const Rational& lambda) {
  return RatPoly({0, -1, 1}) * x.derivative().derivative() - lambda * (lambda - 1) * x;
}

RatPoly gegenbauer_solution(int lambda) {
  if (lambda == 0 || lambda == 1) throw std::invalid_argument("gegenbauer_solution needs lambda not in {0, 1}");
  const Rational c = Rational(lambda) * (lambda - 1);
  const int deg = lambda >= 2 ? lambda : 1 - lambda;
  std::vector<Rational> a(static_cast<std::size_t>(deg) + 1, Rational(0));
  a[1] = 1;
  for (int k = 1; k < deg; ++k) a[k + 1] = (Rational(k) * (k - 1) - c) * a[k] / (Rational(k) * (k + 1));
  const RatPoly p(std::move(a));
  if (!hypergeometric_operator(p, lambda).is_zero()) throw std::logic_error("Gegenbauer recurrence did not terminate");
  return p.monic();
}

bool all_roots_in_unit_interval(const RatPoly& p) {
  const int deg = p.degree();
  if (deg < 1) return false;
  const int in_unit = sturm_root_count(p, 0, 1) + (p(Rational(0)) == 0 ? 1 : 0);
  return sturm_root_count_all(p) == deg && in_unit == deg;
}

// ---------------------------------------------------------------------------

RiccatiReport riccati_trace(const Rational& lambda, double t_min) {
  if (is_integer(lambda)) throw std::invalid_argument("riccati_trace needs non-integer lambda");
  if (!(t_min < 0)) throw std::invalid_argument("riccati_trace needs t_min < 0");
  RiccatiReport rep;
  rep.lambda = lambda;
  rep.lambda_used = lambda < 1 ? lambda : Rational(1 - lambda);
  rep.t_min = t_min;
  const double lu = to_double(rep.lambda_used);
  const double lm1 = lu - 1.0;

  // Analytic solution at 0 (x(0) = 0, x'(0) = 1) to start away from the singular point.
  const double t_start = std::max(-0.05, 0.5 * t_min);
  const double c = lu * (lu - 1.0);
  double x = 0.0, dx = 0.0, ak = 1.0, pw = 1.0;
  for (int k = 1; k < 400; ++k) {
    dx += k * ak * pw;
    pw *= t_start;
    x += ak * pw;
    ak *= (static_cast<double>(k) * (k - 1) - c) / (static_cast<double>(k) * (k + 1));
    if (std::abs(ak * pw) < 1e-18) break;
  }
  using State = std::array<double, 2>;  // (w, log|x'|)
  State st{t_start - lu * x / dx, std::log(std::abs(dx))};
  const int xprime_sign = dx > 0 ? 1 : -1;
  rep.w_sign = st[0] > 0 ? 1 : (st[0] < 0 ? -1 : 0);
  rep.min_abs_x = std::abs(x);
  rep.t_reached = t_start;

  auto record = [&](const State& s, double t) {
    const double w = s[0];
    const double q = w * w - 2 * t * w + t;
    rep.samples.push_back({t, w, q});
    rep.t_reached = t;
    if (!(q < 0)) rep.inside_hyperbola = false;
    const int sg = w > 0 ? 1 : (w < 0 ? -1 : 0);
    if (sg != rep.w_sign) rep.w_sign_constant = false;
    const double ax = std::exp(s[1]) * std::abs(t - w) / std::abs(lu);
    rep.min_abs_x = std::min(rep.min_abs_x, ax);
    if (!(ax > 0)) rep.x_nonzero = false;
  };
  // The segment between the singular point and t_start is covered by the series.
  for (int k = 1; k <= 8; ++k) {
    const double t = t_start * k / 8.0;
    double xx = 0.0, dd = 0.0, a = 1.0, p = 1.0;
    for (int j = 1; j < 400; ++j) {
      dd += j * a * p;
      p *= t;
      xx += a * p;
      a *= (static_cast<double>(j) * (j - 1) - c) / (static_cast<double>(j) * (j + 1));
      if (std::abs(a * p) < 1e-18) break;
    }
    if ((dd > 0 ? 1 : -1) != xprime_sign) rep.xprime_sign_constant = false;
    record(State{t - lu * xx / dd, std::log(std::abs(dd))}, t);
  }

  auto rhs = [&](const State& s, State& ds, double t) {
    const double den = t * t - t;
    ds[0] = lm1 * (s[0] * s[0] - 2 * t * s[0] + t) / den;
    ds[1] = lm1 * (t - s[0]) / den;
  };
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled(1e-12, 1e-12, odeint::runge_kutta_dopri5<State>());
  double t = t_start;
  double dt = -1e-4;
  while (t > t_min) {
    if (t + dt < t_min) dt = t_min - t;
    const auto res = stepper.try_step(rhs, st, t, dt);
    if (res == odeint::fail) {
      if (std::abs(dt) < 1e-14) {
        rep.blew_up = true;
        break;
      }
      continue;
    }
    if (!std::isfinite(st[0]) || std::abs(st[0]) > 1e12) {
      rep.blew_up = true;
      break;
    }
    record(st, t);
  }
  if (rep.blew_up) {
    rep.xprime_sign_constant = false;
    rep.x_nonzero = false;
  }
  return rep;
}

}  // namespace fcheb
