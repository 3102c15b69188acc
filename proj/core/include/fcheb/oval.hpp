#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fcheb/catalog.hpp"

namespace fcheb {

/// Raised when a level curve cannot be traced as a closed star-shaped oval, or when a
/// quadrature does not reach its tolerance within the sample budget.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadOptions {
  double tol_trace = 1e-12;  // max |H - h| at the nodes
  double tol_quad = 1e-10;   // est_error <= tol_quad * max(1, |value|), or at the roundoff floor
  int n_min = 64;
  int n_max = 1 << 17;
};

/// Oval sampled at N equally spaced polar angles around the center; nodes are ordered
/// counterclockwise and `points` repeats the first node at the end.
struct OvalSample {
  double h = 0.0;
  std::array<double, 2> center{};
  std::vector<std::array<double, 2>> points;
  std::vector<double> theta;    // arc parameter, strictly increasing, theta[N] = theta[0] + 2 pi
  std::vector<double> radius;
  std::vector<double> dr_dtheta;
  std::vector<double> dr_dh;    // 1 / (dH/dr) along each ray
  double residual = 0.0;

  std::size_t nodes() const { return radius.size(); }
  /// Every other node; the sample a refinement step started from.
  OvalSample coarsen() const;
};

struct QuadResult {
  double value = 0.0;
  double est_error = 0.0;
  double magnitude = 0.0;  // trapezoid sum of |integrand|; sets the roundoff floor of est_error
};

struct MomentIntegral {
  int i = 0;
  int j = 0;
  double h = 0.0;
  double value = 0.0;
  double est_error = 0.0;
  double magnitude = 0.0;
};

/// Samples the oval of {H = h} around the case's center with `n` nodes.
/// Throws std::domain_error when h is not strictly inside the period annulus and
/// QuadratureError when the level curve is not a closed star-shaped oval.
OvalSample sample_oval(const HamiltonianCase& c, double h, int n, double tol_trace = 1e-12);

/// Samples with enough nodes that inserting midpoints changes every monomial line integral
/// x^a y^b dx, x^a y^b dy with a + b <= 8 by less than tol_quad.
OvalSample trace_oval(const HamiltonianCase& c, double h, const QuadOptions& opt = {});

/// Counterclockwise line integral of form * x^weight_power over the sample, with the
/// trapezoid rule; est_error compares against the half-density sample.
QuadResult line_integral(const OvalSample& s, const OneForm& form, int weight_power = 0);

/// Integral of x^i y^j over the region bounded by the oval. i may be negative when the oval
/// stays in x > 0.
QuadResult region_moment(const OvalSample& s, int i, int j);

/// d/dh of the region moment of x^i y^j, via the Gelfand-Leray form along each ray.
QuadResult region_moment_derivative(const OvalSample& s, int i, int j);

/// d/dh of the counterclockwise line integral of form * x^weight_power.
QuadResult line_integral_derivative(const OvalSample& s, const OneForm& form, int weight_power = 0);

/// I_{ij}(h) over {H < h}; for cases with an integrating factor x^k the weight is included.
/// Refines until est_error meets the tolerance.
MomentIntegral area_moment(const HamiltonianCase& c, double h, int i, int j, const QuadOptions& opt = {});

/// All weighted moments I_{ij} with i_min <= i, 0 <= j, i + j <= max_total from one refined
/// sample. Keys are (i, j).
std::map<std::pair<int, int>, MomentIntegral> moment_table(const HamiltonianCase& c, double h, int i_min,
                                                            int max_total, const QuadOptions& opt = {});

/// +1 or -1 so that sign * (counterclockwise integral of the first form) is positive on the
/// period annulus.
int orientation_sign(const HamiltonianCase& c);

/// The vector of Abelian integrals (I1, I2) of the case's two forms, sign-normalized. The forms
/// already carry any integrating factor, so no weight is applied here.
std::array<QuadResult, 2> abelian_integrals(const HamiltonianCase& c, double h, const QuadOptions& opt = {});

/// (I1', I2') by Gelfand-Leray, sign-normalized like abelian_integrals.
std::array<QuadResult, 2> abelian_derivatives(const HamiltonianCase& c, double h, const QuadOptions& opt = {});

}  // namespace fcheb
