#include "fcheb/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include <boost/numeric/odeint.hpp>

namespace fcheb {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 4>;
constexpr double kPi = std::numbers::pi;
constexpr double kPhaseStep = kPi / 8;

struct Params {
  double lambda, mu, omega;
};

// d/dtau of (x, y) along z = a + tau * d, i.e. d * A(z)^{-1} (x, y).
struct ChordRhs {
  Params p;
  Complex a, d;
  void operator()(const State& s, State& ds, double tau) const {
    const Complex z = a + tau * d;
    const Complex a00 = (2.0 * z - 1.0) / (2.0 * p.lambda), a01 = p.omega / (2.0 * p.lambda);
    const Complex a10 = 1.0 / (2.0 * p.mu * p.omega), a11 = (2.0 * z - 1.0) / (2.0 * p.mu);
    const Complex det = a00 * a11 - a01 * a10;
    const Complex x(s[0], s[1]), y(s[2], s[3]);
    const Complex dx = d * (a11 * x - a01 * y) / det;
    const Complex dy = d * (-a10 * x + a00 * y) / det;
    ds = {dx.real(), dx.imag(), dy.real(), dy.imag()};
  }
};

State pack(const std::array<Complex, 2>& v) { return {v[0].real(), v[0].imag(), v[1].real(), v[1].imag()}; }
std::array<Complex, 2> unpack(const State& s) { return {Complex(s[0], s[1]), Complex(s[2], s[3])}; }

Params params_of(const Rational& lambda, const Rational& omega) {
  return {to_double(lambda), to_double(2 - lambda), to_double(omega)};
}

// Continues along the chord a -> b and records the state at each tau in `taus` (ascending in (0, 1]).
std::vector<std::array<Complex, 2>> run_chord(const Params& p, Complex a, Complex b, std::array<Complex, 2> start,
                                              const std::vector<double>& taus) {
  std::vector<std::array<Complex, 2>> out;
  out.reserve(taus.size());
  State s = pack(start);
  ChordRhs rhs{p, a, b - a};
  auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
  try {
    double t0 = 0.0;
    for (double tau : taus) {
      if (tau > t0) odeint::integrate_adaptive(stepper, rhs, s, t0, tau, std::min(1e-3, tau - t0));
      t0 = tau;
      out.push_back(unpack(s));
    }
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "continuation stalled between " << a << " and " << b << ": " << e.what();
    throw ContinuationError(os.str());
  }
  for (const auto& v : out)
    if (!std::isfinite(std::abs(v[0])) || !std::isfinite(std::abs(v[1])))
      throw ContinuationError("continuation produced non-finite values");
  return out;
}

std::array<Complex, 2> run_chord(const Params& p, Complex a, Complex b, std::array<Complex, 2> start) {
  return run_chord(p, a, b, start, {1.0}).front();
}

double segment_distance(Complex a, Complex b, Complex c) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(c - a);
  const double u = std::clamp(((c - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(a + u * d - c);
}

// True when the closed segment meets [1, +inf).
bool touches_cut(Complex a, Complex b) {
  const double ya = a.imag(), yb = b.imag();
  if ((ya > 0 && yb > 0) || (ya < 0 && yb < 0)) return false;
  if (ya == yb) return std::max(a.real(), b.real()) >= 1.0;
  const double u = ya / (ya - yb);
  return a.real() + u * (b.real() - a.real()) >= 1.0;
}

struct GermKey {
  std::string lambda, omega;
  bool operator<(const GermKey& o) const { return std::tie(lambda, omega) < std::tie(o.lambda, o.omega); }
};

std::shared_ptr<const SolutionGerm> cached_germ(const Rational& lambda, const Rational& omega) {
  static std::mutex mu;
  static std::map<GermKey, std::shared_ptr<const SolutionGerm>> cache;
  const GermKey key{to_string(lambda), to_string(omega)};
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<const SolutionGerm>(distinguished_germ(lambda, omega));
  return slot;
}

Params params_of(const SolutionGerm& g) { return params_of(g.lambda, g.omega); }

}  // namespace

SolutionGerm distinguished_germ(const Rational& lambda, const Rational& omega) {
  return local_germ(form7_system(lambda, omega), GermBase::kZero, 80);
}

ComplexPath path_to(Complex t, int side) {
  ComplexPath p;
  if (std::abs(t) <= 0.5) {
    p.waypoints = {t};
    return p;
  }
  const double phi = std::arg(t);
  if (t.real() > 0.6 && std::abs(phi) < kPi / 4) {
    int sgn = t.imag() > 0 ? 1 : t.imag() < 0 ? -1 : side;
    if (sgn == 0) {
      if (t.real() >= 1.0) throw std::invalid_argument("path_to: a point on the cut needs a side");
      p.waypoints = {Complex(0.4, 0.0), t};
      return p;
    }
    const double s = sgn;
    p.waypoints = {0.4 * std::polar(1.0, s * kPi / 4), Complex(0.6, 0.6 * s), Complex(t.real(), 0.6 * s), t};
    p.side = t.imag() == 0.0 ? sgn : 0;
    return p;
  }
  p.waypoints = {std::polar(0.4, phi), t};
  return p;
}

std::array<Complex, 2> continue_solution(const SolutionGerm& germ, const ComplexPath& path) {
  if (germ.base != GermBase::kZero) throw std::invalid_argument("continue_solution: germ must be based at 0");
  if (path.waypoints.empty()) throw std::invalid_argument("continue_solution: empty path");
  const Complex start = path.waypoints.front();
  if (std::abs(start) > 0.5) throw std::invalid_argument("continue_solution: path must start within |t| <= 0.5");
  std::array<Complex, 2> v = germ.eval(0, start);
  const Params p = params_of(germ);
  const std::size_t n = path.waypoints.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex a = path.waypoints[k], b = path.waypoints[k + 1];
    const bool last = k + 2 == n;
    const bool end_on_cut = last && b.imag() == 0.0 && b.real() > 1.0;
    if (end_on_cut) {
      if (path.side == 0) throw std::invalid_argument("continue_solution: endpoint on the cut needs a side");
      if (a.real() != b.real() || a.imag() * path.side <= 0)
        throw std::invalid_argument("continue_solution: cut endpoint must be reached vertically from its side");
    } else if (touches_cut(a, b)) {
      throw std::invalid_argument("continue_solution: path crosses the cut [1, +inf)");
    }
    if (std::min(segment_distance(a, b, 0.0), segment_distance(a, b, 1.0)) < path.min_singularity_distance)
      throw std::invalid_argument("continue_solution: path passes too close to a singular point");
    v = run_chord(p, a, b, v);
  }
  return v;
}

std::array<Complex, 2> solution_at(const SolutionGerm& germ, Complex t, int side) {
  if (std::abs(t) <= 0.5) return germ.eval(0, t);
  return continue_solution(germ, path_to(t, side));
}

std::vector<std::array<Complex, 2>> cut_side_values(const SolutionGerm& germ, const std::vector<double>& ts, int side) {
  if (ts.empty()) return {};
  if (side != 1 && side != -1) throw std::invalid_argument("cut_side_values: side must be +1 or -1");
  if (!std::is_sorted(ts.begin(), ts.end()) || ts.front() <= 1.0)
    throw std::invalid_argument("cut_side_values: points must be sorted and exceed 1");
  std::vector<std::array<Complex, 2>> out{solution_at(germ, ts.front(), side)};
  if (ts.size() == 1) return out;
  std::vector<double> taus;
  for (std::size_t k = 1; k < ts.size(); ++k) taus.push_back((ts[k] - ts.front()) / (ts.back() - ts.front()));
  const auto rest = run_chord(params_of(germ), ts.front(), ts.back(), out.front(), taus);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

void validate(const ContourSpec& spec) {
  if (!(spec.R > 2.0) || !(spec.r > 0.0 && spec.r < 0.5) || !(spec.cut_offset > 0.0 && spec.cut_offset <= spec.r / 10) ||
      spec.samples_per_segment < 8 || spec.escalations < 0)
    throw std::invalid_argument("ContourSpec: need R > 2, 0 < r < 1/2, 0 < cut_offset <= r/10, samples >= 8, escalations >= 0");
}

namespace {

std::vector<Complex> contour_points(const ContourSpec& spec, std::array<std::size_t, 6>& starts) {
  const int n = spec.samples_per_segment;
  const double eps = spec.cut_offset;
  const double phi_e = std::asin(eps / spec.r);
  const double th_e = std::asin(eps / spec.R);
  std::vector<Complex> pts{Complex(1.0 - spec.r, 0.0)};
  auto arc = [&](Complex c, double rad, double from, double to, int m) {
    for (int k = 1; k <= m; ++k) pts.push_back(c + std::polar(rad, from + (to - from) * k / m));
  };
  auto side = [&](double im, double from, double to, int m) {
    // geometric spacing in the distance from t = 1
    const double lf = std::log(from - 1.0), lt = std::log(to - 1.0);
    for (int k = 1; k <= m; ++k) pts.push_back(Complex(1.0 + std::exp(lf + (lt - lf) * k / m), im));
  };
  const double near = 1.0 + spec.r * std::cos(phi_e);
  const double far = spec.R * std::cos(th_e);
  starts[0] = 0;
  arc(1.0, spec.r, kPi, phi_e, n);
  starts[1] = pts.size() - 1;
  side(eps, near, far, n);
  starts[2] = pts.size() - 1;
  arc(0.0, spec.R, th_e, 2 * kPi - th_e, 2 * n);
  starts[3] = pts.size() - 1;
  side(-eps, far, near, n);
  starts[4] = pts.size() - 1;
  arc(1.0, spec.r, -phi_e, -kPi, n);
  pts.back() = pts.front();
  starts[5] = pts.size() - 1;
  return pts;
}

struct TraceKey {
  std::string lambda, omega;
  double R, r, eps;
  int n;
  bool operator<(const TraceKey& o) const {
    return std::tie(lambda, omega, R, r, eps, n) < std::tie(o.lambda, o.omega, o.R, o.r, o.eps, o.n);
  }
};

}  // namespace

std::shared_ptr<const ContourTrace> contour_trace(const Rational& lambda, const Rational& omega,
                                                  const ContourSpec& spec) {
  validate(spec);
  static std::mutex mu;
  static std::map<TraceKey, std::shared_ptr<const ContourTrace>> cache;
  const TraceKey key{to_string(lambda), to_string(omega), spec.R, spec.r, spec.cut_offset, spec.samples_per_segment};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto tr = std::make_shared<ContourTrace>();
  tr->spec = spec;
  tr->lambda = lambda;
  tr->omega = omega;
  const auto germ = cached_germ(lambda, omega);
  const Params p = params_of(*germ);
  const auto pts = contour_points(spec, tr->segment_start);
  auto v = run_chord(p, 0.4, pts.front(), germ->eval(0, Complex(0.4, 0.0)));
  tr->samples.push_back({pts.front(), v[0], v[1]});
  for (std::size_t k = 1; k < pts.size(); ++k) {
    v = run_chord(p, pts[k - 1], pts[k], v);
    tr->samples.push_back({pts[k], v[0], v[1]});
  }
  const auto& a = tr->samples.front();
  const auto& b = tr->samples.back();
  tr->closure_error =
      std::hypot(std::abs(a.x - b.x), std::abs(a.y - b.y)) / std::hypot(std::abs(a.x), std::abs(a.y));
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = tr;
  return slot;
}

int winding_count(const std::function<Complex(Complex)>& f, std::vector<Complex> points, double* winding) {
  if (points.size() < 3) throw std::invalid_argument("winding_count: need a closed polyline");
  if (points.front() != points.back()) points.push_back(points.front());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    std::vector<std::pair<Complex, Complex>> stack{{points[k], points[k + 1]}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      const Complex fa = f(a), fb = f(b);
      if (fa == 0.0 || fb == 0.0) throw std::domain_error("winding_count: zero on the contour");
      const double d = std::arg(fb / fa);
      if (std::abs(d) < kPhaseStep || std::abs(b - a) < 1e-13) {
        total += d;
      } else {
        const Complex m = 0.5 * (a + b);
        stack.push_back({m, b});
        stack.push_back({a, m});
      }
    }
  }
  if (winding) *winding = total;
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

namespace {

struct WindingResult {
  std::array<double, 5> increments{};
  double total = 0.0;
  double max_step = 0.0;
  int refined = 0;
  double min_rel = 0.0;  // min |g| / scale over the evaluated samples
};

// Winding of g(t, x, y) around the trace; chords whose phase step exceeds pi/8 are subdivided
// by continuing the ODE from the left sample. `scale` gives the size of the terms of g at a sample;
// without it |g| is compared with its maximum over the trace.
WindingResult trace_winding(const ContourTrace& tr, const std::function<Complex(const ContourSample&)>& g,
                            const std::function<double(const ContourSample&)>& scale = nullptr) {
  const Params p = params_of(tr.lambda, tr.omega);
  WindingResult w;
  double gmax = 0.0, gmin = std::numeric_limits<double>::infinity();
  double local = std::numeric_limits<double>::infinity();
  auto note = [&](Complex v, const ContourSample& s) {
    gmax = std::max(gmax, std::abs(v));
    gmin = std::min(gmin, std::abs(v));
    if (scale) {
      const double sc = scale(s);
      if (sc > 0) local = std::min(local, std::abs(v) / sc);
    }
  };
  std::size_t seg = 0;
  for (std::size_t k = 0; k + 1 < tr.samples.size(); ++k) {
    while (seg + 1 < 5 && k >= tr.segment_start[seg + 1]) ++seg;
    const auto& s0 = tr.samples[k];
    const auto& s1 = tr.samples[k + 1];
    const Complex g0 = g(s0), g1 = g(s1);
    note(g0, s0);
    double d = std::arg(g1 / g0);
    if (std::abs(d) >= kPhaseStep) {
      // subdivide the chord into pieces until each step is small
      int m = 8;
      for (int attempt = 0; attempt < 12; ++attempt, m *= 4) {
        std::vector<double> taus;
        for (int j = 1; j <= m; ++j) taus.push_back(static_cast<double>(j) / m);
        const auto vals = run_chord(p, s0.t, s1.t, {s0.x, s0.y}, taus);
        double sum = 0.0, worst = 0.0;
        Complex prev = g0;
        for (int j = 0; j < m; ++j) {
          const ContourSample sj{s0.t + taus[static_cast<std::size_t>(j)] * (s1.t - s0.t), vals[static_cast<std::size_t>(j)][0],
                                 vals[static_cast<std::size_t>(j)][1]};
          const Complex gj = j + 1 == m ? g1 : g(sj);
          note(gj, sj);
          const double dj = std::arg(gj / prev);
          sum += dj;
          worst = std::max(worst, std::abs(dj));
          prev = gj;
        }
        if (worst < kPhaseStep) {
          d = sum;
          w.refined += m - 1;
          w.max_step = std::max(w.max_step, worst);
          break;
        }
        if (attempt == 11) throw ContinuationError("phase refinement did not converge");
      }
    } else {
      w.max_step = std::max(w.max_step, std::abs(d));
    }
    w.increments[seg] += d;
    w.total += d;
  }
  if (scale)
    w.min_rel = local;
  else
    w.min_rel = gmax > 0 ? gmin / gmax : 0.0;
  return w;
}

Complex element_value(const VSpaceElement& e, const ContourSample& s) {
  return e.P.eval(s.t) * s.x + e.Q.eval(s.t) * s.y;
}

ZeroCountReport count_once(const VSpaceElement& elem, const ContourSpec& spec, int bound) {
  ContourSpec cur = spec;
  for (int attempt = 0;; ++attempt) {
    const auto tr = contour_trace(elem.lambda, elem.omega, cur);
    const auto w = trace_winding(
        *tr, [&](const ContourSample& s) { return element_value(elem, s); },
        [&](const ContourSample& s) { return std::abs(elem.P.eval(s.t) * s.x) + std::abs(elem.Q.eval(s.t) * s.y); });
    if (w.min_rel < 1e-9) {
      if (attempt == 3) throw ContinuationError("zero of the integral on the contour persists after perturbation");
      cur.R *= 1.0 + 1e-3;
      cur.r *= 1.0 + 1e-3;
      continue;
    }
    ZeroCountReport rep;
    rep.increments = w.increments;
    rep.total_winding = w.total;
    rep.zero_count = static_cast<int>(std::lround(w.total / (2 * kPi)));
    rep.max_phase_step = w.max_step;
    rep.refined_samples = w.refined;
    rep.R = cur.R;
    rep.r = cur.r;
    rep.bound = bound;
    rep.pass = rep.zero_count <= bound;
    const auto wy = trace_winding(*tr, [](const ContourSample& s) { return s.y; });
    rep.y_zero_count = static_cast<int>(std::lround(wy.total / (2 * kPi)));
    int changes = 0;
    double prev = 0.0;
    for (std::size_t k = tr->segment_start[1]; k <= tr->segment_start[2]; ++k) {
      const auto& s = tr->samples[k];
      const double im = (elem.P.eval(s.t) * s.x / s.y + elem.Q.eval(s.t)).imag();
      if (prev != 0.0 && im != 0.0 && (im > 0) != (prev > 0)) ++changes;
      if (im != 0.0) prev = im;
    }
    rep.im_f_sign_changes = changes;
    return rep;
  }
}

}  // namespace

ZeroCountReport count_zeros_argument(const VSpaceElement& elem, const ContourSpec& spec, int bound,
                                     bool check_stability) {
  if (elem.P.is_zero() && elem.Q.is_zero()) throw std::invalid_argument("count_zeros_argument: zero element");
  if (is_integer(elem.lambda)) throw std::invalid_argument("count_zeros_argument: integer exponents");
  ZeroCountReport rep = count_once(elem, spec, bound);
  if (!check_stability) return rep;
  ContourSpec cur = spec;
  for (int step = 0;; ++step) {
    ContourSpec wide = cur, tight = cur;
    wide.R *= 2;
    tight.r /= 2;
    tight.cut_offset = std::min(tight.cut_offset, tight.r / 10);
    rep.stable = count_once(elem, wide, bound).zero_count == rep.zero_count &&
                 count_once(elem, tight, bound).zero_count == rep.zero_count;
    if (rep.stable || step >= spec.escalations) break;
    cur = wide;
    cur.r = tight.r;
    cur.cut_offset = tight.cut_offset;
    rep = count_once(elem, cur, bound);
  }
  return rep;
}

IntervalCount count_zeros_interval(const std::function<double(double)>& f, double a, double b, int grid) {
  if (!(b > a) || grid < 3) throw std::invalid_argument("count_zeros_interval: need a < b and grid >= 3");
  std::vector<double> ts(static_cast<std::size_t>(grid)), fs(ts.size());
  for (int k = 0; k < grid; ++k) {
    ts[static_cast<std::size_t>(k)] = a + (b - a) * 0.5 * (1.0 - std::cos(kPi * k / (grid - 1)));
    fs[static_cast<std::size_t>(k)] = f(ts[static_cast<std::size_t>(k)]);
  }
  double fmax = 0.0;
  for (double v : fs) fmax = std::max(fmax, std::abs(v));
  IntervalCount out;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    double lo = ts[k], hi = ts[k + 1], flo = fs[k], fhi = fs[k + 1];
    if (flo == 0.0 && k > 0) continue;  // counted with the previous cell
    if (flo == 0.0 || fhi == 0.0 || (flo > 0) != (fhi > 0)) {
      if (flo == 0.0) {
        out.roots.push_back(lo);
      } else if (fhi == 0.0) {
        out.roots.push_back(hi);
      } else {
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = f(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        out.roots.push_back(0.5 * (lo + hi));
      }
    }
  }
  for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
    const double l = fs[k - 1], m = fs[k], r = fs[k + 1];
    if (m == 0.0 || (l > 0) != (m > 0) || (r > 0) != (m > 0)) continue;
    if (std::abs(m) <= std::abs(l) && std::abs(m) <= std::abs(r) && (m - l) * (r - m) < 0 &&
        std::abs(m) < 1e-8 * fmax)
      ++out.even_zero_candidates;
  }
  out.zeros = static_cast<int>(out.roots.size());
  for (std::size_t k = 1; k < out.roots.size(); ++k)
    if (out.roots[k] - out.roots[k - 1] < 1e-10) out.unresolved = true;
  return out;
}

std::vector<std::array<double, 2>> real_solution(const SolutionGerm& germ, const std::vector<double>& ts) {
  if (!std::is_sorted(ts.begin(), ts.end())) throw std::invalid_argument("real_solution: points must be sorted");
  if (!ts.empty() && ts.back() >= 1.0) throw std::invalid_argument("real_solution: points must lie below 1");
  const Params p = params_of(germ);
  std::vector<std::array<double, 2>> out(ts.size());
  auto to_real = [](const std::array<Complex, 2>& v) { return std::array<double, 2>{v[0].real(), v[1].real()}; };
  std::vector<std::size_t> neg, pos;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (std::abs(ts[k]) <= 0.5)
      out[k] = to_real(germ.eval(0, Complex(ts[k], 0.0)));
    else if (ts[k] < 0)
      neg.push_back(k);
    else
      pos.push_back(k);
  }
  auto sweep = [&](double from, const std::vector<std::size_t>& idx) {
    if (idx.empty()) return;
    const double to = ts[idx.back()];
    std::vector<double> taus;
    for (auto k : idx) taus.push_back((ts[k] - from) / (to - from));
    const auto vals = run_chord(p, from, to, germ.eval(0, Complex(from, 0.0)), taus);
    for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = to_real(vals[j]);
  };
  std::reverse(neg.begin(), neg.end());
  sweep(-0.5, neg);
  sweep(0.5, pos);
  return out;
}

IntervalCount count_zeros_interval(const VSpaceElement& elem, double a, double b, int grid) {
  if (b > 1.0 - 1e-6) throw std::invalid_argument("count_zeros_interval: interval must end below 1 - 1e-6");
  const auto germ = cached_germ(elem.lambda, elem.omega);
  auto f = [&](double t) {
    const auto v = real_solution(*germ, {t}).front();
    return elem.P.eval(t) * v[0] + elem.Q.eval(t) * v[1];
  };
  // Grid values in one sweep; bisection falls back to single evaluations.
  std::vector<double> ts(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) ts[static_cast<std::size_t>(k)] = a + (b - a) * 0.5 * (1.0 - std::cos(kPi * k / (grid - 1)));
  const auto vals = real_solution(*germ, ts);
  std::map<double, double> known;
  for (std::size_t k = 0; k < ts.size(); ++k) known[ts[k]] = elem.P.eval(ts[k]) * vals[k][0] + elem.Q.eval(ts[k]) * vals[k][1];
  return count_zeros_interval(
      [&](double t) {
        auto it = known.find(t);
        return it != known.end() ? it->second : f(t);
      },
      a, b, grid);
}

IntervalCount count_zeros_negative(const VSpaceElement& elem, double a, double b, int grid) {
  if (!(a < b && b < 0.0)) throw std::invalid_argument("count_zeros_negative: need a < b < 0");
  const auto germ = cached_germ(elem.lambda, elem.omega);
  const double ua = std::log(-b), ub = std::log(-a);
  std::vector<double> ts(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k)
    ts[static_cast<std::size_t>(k)] = -std::exp(ua + (ub - ua) * 0.5 * (1.0 - std::cos(kPi * k / (grid - 1))));
  std::sort(ts.begin(), ts.end());
  const auto vals = real_solution(*germ, ts);
  std::map<double, double> known;
  for (std::size_t k = 0; k < ts.size(); ++k) known[ts[k]] = elem.P.eval(ts[k]) * vals[k][0] + elem.Q.eval(ts[k]) * vals[k][1];
  auto f = [&](double u) {
    const double t = -std::exp(u);
    auto it = known.find(t);
    if (it != known.end()) return it->second;
    const auto v = real_solution(*germ, {t}).front();
    return elem.P.eval(t) * v[0] + elem.Q.eval(t) * v[1];
  };
  auto out = count_zeros_interval(f, ua, ub, grid);
  for (auto& r : out.roots) r = -std::exp(r);
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}


BoundVerdict check_bound(const ZeroCountReport& report, const ApplicationSpace& space, std::optional<int> sigma_zeros) {
  BoundVerdict v;
  v.d_bound = space.dim + space.accuracy - 1;
  v.sigma_bound = v.d_bound - 1;
  v.d_pass = report.zero_count <= v.d_bound;
  if (sigma_zeros) v.sigma_pass = *sigma_zeros <= v.sigma_bound;
  return v;
}

GrowthCheck growth_check(const VSpaceElement& elem, double R) {
  const auto germ = cached_germ(elem.lambda, elem.omega);
  const double s = to_double(elem.s);
  auto c_at = [&](double rad) {
    double c = 0.0;
    for (int k = 0; k < 64; ++k) {
      double th = 2 * kPi * (k + 0.5) / 64;
      if (th > kPi) th -= 2 * kPi;
      const Complex t = std::polar(rad, th);
      const auto v = solution_at(*germ, t);
      c = std::max(c, std::abs(elem.P.eval(t) * v[0] + elem.Q.eval(t) * v[1]) / std::pow(rad, s));
    }
    return c;
  };
  return {c_at(R), c_at(2 * R)};
}

std::vector<double> approach_one(const Rational& lambda, const Rational& omega) {
  const auto germ = cached_germ(lambda, omega);
  std::vector<double> ts;
  for (int k = 3; k <= 8; ++k) ts.push_back(1.0 - std::pow(10.0, -k));
  std::vector<double> out;
  for (const auto& v : real_solution(*germ, ts)) out.push_back(v[0]);
  return out;
}

}  // namespace fcheb
