#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "fcheb/catalog.hpp"
#include "fcheb/oval.hpp"

namespace fcheb {

using Complex = std::complex<double>;

/// n interior levels of the period annulus, 4% away from each end (unbounded annuli are
/// truncated to width 2).
std::vector<double> default_h_grid(const HamiltonianCase& c, int n);

/// max over the grid of |I - A I'| / |I| with I from quadrature and I' from Gelfand-Leray.
double residual_fuchsian(const HamiltonianCase& c, const std::vector<double>& h_grid, const QuadOptions& opt = {});

struct HypergeometricResidual {
  double x = 0.0;  // max |t(t-1) x'' - lambda(lambda-1) x| / |x|
  double y = 0.0;  // same with mu
};

/// Normal-form coordinate t of each level in default_h_grid(c, n). For rows whose cut lies to the
/// left (h1 < h0) the annulus maps to t < 0.
std::vector<double> default_t_grid(const HamiltonianCase& c, int n);

/// J = T I and its first two t-derivatives in the unit-interval normal form at one level.
/// J' comes from quadrature and J'' = (A^{-1})' J + A^{-1} J'.
struct NormalFormJet {
  double t = 0.0;
  std::array<double, 2> J{}, dJ{}, ddJ{};
};

/// Throws std::invalid_argument at t in {0, 1}.
NormalFormJet normal_form_jet(const HamiltonianCase& c, double t, const QuadOptions& opt = {});

/// Residuals of the scalar equations for J = T I in the unit-interval normal form. J' comes from
/// quadrature and J'' = (A^{-1})' J + A^{-1} J'. Throws std::invalid_argument at t in {0, 1}
/// and when x or y vanishes.
HypergeometricResidual residual_hypergeometric(const HamiltonianCase& c, const std::vector<double>& t_grid,
                                               const QuadOptions& opt = {});

/// t(t-1) x'' - lambda(lambda-1) x as an exact polynomial.
RatPoly hypergeometric_operator(const RatPoly& x, const Rational& lambda);

enum class GermBase { kZero, kOne, kInfinity };

/// One element of a local frame. Near t = b in {0, 1} with u = t - b:
///   (x, y) = sum_k (x_k, y_k) u^(exponent + k) + log_coef * log(u) * (frame[log_partner])(u).
/// Near infinity the powers are t^(exponent - k) and the logarithm is log t.
struct FrameSolution {
  Rational exponent;
  std::vector<Rational> x;
  std::vector<Rational> y;
  Rational log_coef{0};
  int log_partner = -1;
};

struct SolutionGerm {
  GermBase base = GermBase::kZero;
  Rational lambda, mu, omega;
  int trunc = 0;
  /// Base 0 and 1: frame[0] analytic with x'(base) = 1, frame[1] with x(base) = 1 and a log term.
  /// Infinity: frame[0] ~ (t^lambda, 0), frame[1] ~ (0, t^mu).
  std::vector<FrameSolution> frame;
  std::optional<Rational> alpha;  // coefficient of t^(lambda-1) in y of frame[0]
  std::optional<Rational> beta;   // coefficient of t^(mu-1) in x of frame[1]
  std::optional<Rational> gamma;  // log coefficient of the resonant frame element at infinity
  double radius = 0.0;            // ratio-test estimate (|u| < radius, or |t| > radius at infinity)

  std::array<Complex, 2> eval(int k, Complex t) const;
  std::array<Complex, 2> eval_derivative(int k, Complex t) const;
};

/// Frobenius frame of the unit-interval normal form with parameters (lambda, omega). sys must be
/// in that form. Throws std::invalid_argument when trunc < 2 or lambda in {0, 1, 2}.
SolutionGerm local_germ(const FuchsianSystem& sys, GermBase base, int trunc = 30);

/// Polynomial solution of t(t-1) x'' = lambda(lambda-1) x that vanishes at 0, made monic.
/// Throws std::invalid_argument for lambda in {0, 1}.
RatPoly gegenbauer_solution(int lambda);

/// True when every root of p is real, simple and lies in [0, 1] (exact Sturm counts).
bool all_roots_in_unit_interval(const RatPoly& p);

struct RiccatiReport {
  Rational lambda;            // as requested
  Rational lambda_used;       // lambda or 1 - lambda (same scalar equation) so that lambda_used < 1
  double t_min = 0.0;
  double t_reached = 0.0;
  bool blew_up = false;
  bool inside_hyperbola = true;   // w^2 - 2 t w + t < 0 on every sample
  bool w_sign_constant = true;
  bool xprime_sign_constant = true;
  bool x_nonzero = true;
  int w_sign = 0;
  double min_abs_x = 0.0;         // in the gauge x'(0) = 1
  std::vector<std::array<double, 3>> samples;  // (t, w, w^2 - 2 t w + t)
};

/// Integrates (t^2 - t)/(lambda - 1) w' = w^2 - 2 t w + t with w = t - lambda x / x' from the
/// analytic solution at t = 0 down to t_min < 0.
RiccatiReport riccati_trace(const Rational& lambda, double t_min);

}  // namespace fcheb
