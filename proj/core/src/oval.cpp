#include "fcheb/oval.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace fcheb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double ipow(double x, int k) {
  if (k < 0) return 1.0 / ipow(x, -k);
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

void check_in_sigma(const HamiltonianCase& c, double h) {
  if (!c.sigma_contains(h))
    throw std::domain_error("h = " + std::to_string(h) + " is outside the period annulus of case " + c.id);
}

struct RayRoot {
  double r;
  double dhdr;
  double residual;
};

// First crossing of {H = h} along the ray center + r (cos t, sin t), starting from r = 0
// and marching with step `step`.
RayRoot solve_ray(const BivariateLaurent& H, const std::array<double, 2>& c, double ct, double st, double h,
                  double sgn, double step, double tol) {
  auto G = [&](double r) { return sgn * (H(c[0] + r * ct, c[1] + r * st) - h); };
  double lo = 0.0;
  double glo = G(lo);
  if (!(glo < 0)) throw QuadratureError("center does not lie strictly inside the level set");
  double hi = step;
  double ghi = G(hi);
  int steps = 0;
  while (ghi < 0) {
    lo = hi;
    glo = ghi;
    hi += step;
    ghi = G(hi);
    if (++steps > 200000 || !std::isfinite(ghi))
      throw QuadratureError("level curve does not close (non-compact component reached)");
  }
  double r = hi;
  double val = 0.0, dr = 0.0;
  for (int it = 0; it < 200; ++it) {
    const auto g = H.eval_grad(c[0] + r * ct, c[1] + r * st);
    val = g[0] - h;
    dr = g[1] * ct + g[2] * st;
    if (sgn * val < 0) {
      lo = r;
    } else {
      hi = r;
    }
    if (std::abs(val) <= 0.25 * tol || hi - lo <= 4e-16 * hi) break;
    double next = r - val / dr;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
  }
  const auto g = H.eval_grad(c[0] + r * ct, c[1] + r * st);
  return {r, g[1] * ct + g[2] * st, std::abs(g[0] - h)};
}

std::vector<OneForm> probe_forms() {
  std::vector<OneForm> out;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b) {
      out.push_back({a, b, Differential::kDx});
      out.push_back({a, b, Differential::kDy});
    }
  return out;
}

// Integrals that cancel to ~0 (odd symmetry) over large integrands cannot beat the roundoff floor.
bool converged(const QuadResult& q, double tol) {
  return q.est_error <= std::max(tol * std::max(1.0, std::abs(q.value)), 1e-13 * q.magnitude);
}

// Trapezoid sum of f over the first `stride`-spaced nodes.
template <class F>
double trapezoid(const OvalSample& s, std::size_t stride, F&& f) {
  const std::size_t n = s.nodes();
  double acc = 0.0;
  for (std::size_t k = 0; k < n; k += stride) acc += f(k);
  return acc * kTwoPi * static_cast<double>(stride) / static_cast<double>(n);
}

template <class F>
QuadResult trapezoid_est(const OvalSample& s, F&& f) {
  const double fine = trapezoid(s, 1, f);
  const double coarse = s.nodes() % 2 == 0 ? trapezoid(s, 2, f) : fine;
  const double mag = trapezoid(s, 1, [&](std::size_t k) { return std::abs(f(k)); });
  return {fine, std::abs(fine - coarse), mag};
}

double node_x(const OvalSample& s, std::size_t k) { return s.points[k][0]; }
double node_y(const OvalSample& s, std::size_t k) { return s.points[k][1]; }

double dx_dtheta(const OvalSample& s, std::size_t k) {
  return s.dr_dtheta[k] * std::cos(s.theta[k]) - s.radius[k] * std::sin(s.theta[k]);
}
double dy_dtheta(const OvalSample& s, std::size_t k) {
  return s.dr_dtheta[k] * std::sin(s.theta[k]) + s.radius[k] * std::cos(s.theta[k]);
}

void check_weight(const OvalSample& s, int power) {
  if (power >= 0) return;
  for (const auto& p : s.points)
    if (!(p[0] > 0)) throw QuadratureError("negative power of x is singular on the oval (x <= 0 reached)");
}

}  // namespace

OvalSample OvalSample::coarsen() const {
  OvalSample out;
  out.h = h;
  out.center = center;
  out.residual = residual;
  for (std::size_t k = 0; k < nodes(); k += 2) {
    out.points.push_back(points[k]);
    out.theta.push_back(theta[k]);
    out.radius.push_back(radius[k]);
    out.dr_dtheta.push_back(dr_dtheta[k]);
    out.dr_dh.push_back(dr_dh[k]);
  }
  out.points.push_back(out.points.front());
  out.theta.push_back(out.theta.front() + kTwoPi);
  return out;
}

OvalSample sample_oval(const HamiltonianCase& c, double h, int n, double tol_trace) {
  check_in_sigma(c, h);
  if (n < 8) throw std::invalid_argument("oval sample needs at least 8 nodes");
  const double h0 = to_double(c.system.h0);
  const double sgn = h > h0 ? 1.0 : -1.0;
  OvalSample s;
  s.h = h;
  s.center = c.center;
  s.points.reserve(static_cast<std::size_t>(n) + 1);
  double step = 1e-3 * std::sqrt(std::abs(h - h0));
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    const double ct = std::cos(t), st = std::sin(t);
    const RayRoot rr = solve_ray(c.H, c.center, ct, st, h, sgn, step, tol_trace);
    const auto g = c.H.eval_grad(c.center[0] + rr.r * ct, c.center[1] + rr.r * st);
    const double tangential = rr.r * (-g[1] * st + g[2] * ct);
    const double gnorm = std::hypot(g[1], g[2]);
    if (!(std::abs(rr.dhdr) > 1e-9 * gnorm) || !(sgn * rr.dhdr > 0))
      throw QuadratureError("oval is not star-shaped around the center (ray tangent to the level curve)");
    s.theta.push_back(t);
    s.radius.push_back(rr.r);
    s.dr_dtheta.push_back(-tangential / rr.dhdr);
    s.dr_dh.push_back(1.0 / rr.dhdr);
    s.points.push_back({c.center[0] + rr.r * ct, c.center[1] + rr.r * st});
    s.residual = std::max(s.residual, rr.residual);
    step = rr.r / 32.0;
  }
  if (s.residual > tol_trace)
    throw QuadratureError("level-set residual " + std::to_string(s.residual) + " exceeds tracing tolerance");
  s.points.push_back(s.points.front());
  s.theta.push_back(kTwoPi);
  if (c.weight_power) check_weight(s, *c.weight_power);
  return s;
}

QuadResult line_integral(const OvalSample& s, const OneForm& form, int weight_power) {
  check_weight(s, weight_power + form.a);
  const double coef = to_double(form.coef);
  const int a = form.a + weight_power;
  return trapezoid_est(s, [&](std::size_t k) {
    const double d = form.d == Differential::kDx ? dx_dtheta(s, k) : dy_dtheta(s, k);
    return coef * ipow(node_x(s, k), a) * ipow(node_y(s, k), form.b) * d;
  });
}

QuadResult region_moment(const OvalSample& s, int i, int j) {
  const QuadResult q = line_integral(s, OneForm{i, j + 1, Differential::kDx}, 0);
  return {-q.value / (j + 1), q.est_error / (j + 1), q.magnitude / (j + 1)};
}

QuadResult region_moment_derivative(const OvalSample& s, int i, int j) {
  check_weight(s, i);
  return trapezoid_est(s, [&](std::size_t k) {
    return ipow(node_x(s, k), i) * ipow(node_y(s, k), j) * s.radius[k] * s.dr_dh[k];
  });
}

QuadResult line_integral_derivative(const OvalSample& s, const OneForm& form, int weight_power) {
  const double coef = to_double(form.coef);
  const int a = form.a + weight_power;
  QuadResult q;
  double factor = 0.0;
  if (form.d == Differential::kDx) {
    if (form.b == 0) return {0.0, 0.0};
    q = region_moment_derivative(s, a, form.b - 1);
    factor = -coef * form.b;
  } else {
    if (a == 0) return {0.0, 0.0};
    q = region_moment_derivative(s, a - 1, form.b);
    factor = coef * a;
  }
  return {factor * q.value, std::abs(factor) * q.est_error, std::abs(factor) * q.magnitude};
}

OvalSample trace_oval(const HamiltonianCase& c, double h, const QuadOptions& opt) {
  static const std::vector<OneForm> probes = probe_forms();
  const int wp = c.weight_power.value_or(0);
  for (int n = opt.n_min; n <= opt.n_max; n *= 2) {
    OvalSample s = sample_oval(c, h, n, opt.tol_trace);
    const bool ok = std::all_of(probes.begin(), probes.end(),
                                [&](const OneForm& f) { return converged(line_integral(s, f, wp), opt.tol_quad); });
    if (ok) return s;
  }
  throw QuadratureError("oval quadrature did not converge with " + std::to_string(opt.n_max) + " nodes at h = " +
                        std::to_string(h));
}

MomentIntegral area_moment(const HamiltonianCase& c, double h, int i, int j, const QuadOptions& opt) {
  const auto table = moment_table(c, h, i, i + j, opt);
  return table.at({i, j});
}

std::map<std::pair<int, int>, MomentIntegral> moment_table(const HamiltonianCase& c, double h, int i_min,
                                                            int max_total, const QuadOptions& opt) {
  const int wp = c.weight_power.value_or(0);
  for (int n = opt.n_min; n <= opt.n_max; n *= 2) {
    const OvalSample s = sample_oval(c, h, n, opt.tol_trace);
    std::map<std::pair<int, int>, MomentIntegral> out;
    bool ok = true;
    for (int i = i_min; i <= max_total && ok; ++i)
      for (int j = 0; j <= max_total - std::max(i, 0); ++j) {
        const QuadResult q = region_moment(s, i + wp, j);
        if (!converged(q, opt.tol_quad)) {
          ok = false;
          break;
        }
        out[{i, j}] = {i, j, h, q.value, q.est_error, q.magnitude};
      }
    if (ok) return out;
  }
  throw QuadratureError("moment quadrature did not converge at h = " + std::to_string(h));
}

int orientation_sign(const HamiltonianCase& c) {
  static std::mutex mu;
  static std::map<std::string, int> cache;
  const std::string key = c.id + "|" + (c.param ? to_string(*c.param) : std::string());
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double lo = to_double(c.sigma_lo);
  const double h = c.sigma_hi ? 0.5 * (lo + to_double(*c.sigma_hi)) : lo + 1.0;
  const OvalSample s = sample_oval(c, h, 256);
  const double v = line_integral(s, c.forms[0]).value;
  if (v == 0) throw QuadratureError("first Abelian integral vanishes at the reference level");
  const int sign = v > 0 ? 1 : -1;
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = sign;
  return sign;
}

std::array<QuadResult, 2> abelian_integrals(const HamiltonianCase& c, double h, const QuadOptions& opt) {
  const int sigma = orientation_sign(c);
  for (int n = opt.n_min; n <= opt.n_max; n *= 2) {
    const OvalSample s = sample_oval(c, h, n, opt.tol_trace);
    std::array<QuadResult, 2> out;
    bool ok = true;
    for (int k = 0; k < 2; ++k) {
      out[k] = line_integral(s, c.forms[k]);
      out[k].value *= sigma;
      ok = ok && converged(out[k], opt.tol_quad);
    }
    if (ok) return out;
  }
  throw QuadratureError("Abelian integral quadrature did not converge at h = " + std::to_string(h));
}

std::array<QuadResult, 2> abelian_derivatives(const HamiltonianCase& c, double h, const QuadOptions& opt) {
  const int sigma = orientation_sign(c);
  for (int n = opt.n_min; n <= opt.n_max; n *= 2) {
    const OvalSample s = sample_oval(c, h, n, opt.tol_trace);
    std::array<QuadResult, 2> out;
    bool ok = true;
    for (int k = 0; k < 2; ++k) {
      out[k] = line_integral_derivative(s, c.forms[k]);
      out[k].value *= sigma;
      ok = ok && converged(out[k], opt.tol_quad);
    }
    if (ok) return out;
  }
  throw QuadratureError("Gelfand-Leray quadrature did not converge at h = " + std::to_string(h));
}

}  // namespace fcheb
