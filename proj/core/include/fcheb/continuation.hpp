#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fcheb/picard_fuchs.hpp"
#include "fcheb/vspace.hpp"

namespace fcheb {

/// Raised when the adaptive integrator cannot make progress (typically too close to t = 0 or 1).
class ContinuationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Piecewise-linear path in the t-plane of the unit-interval normal form. The first waypoint
/// must lie where the germ at 0 converges (|t| <= 0.5). A final waypoint on (1, +inf) is
/// reached from the side given by `side` (+1 upper, -1 lower); elsewhere the path must not
/// touch [1, +inf).
struct ComplexPath {
  std::vector<Complex> waypoints;
  double min_singularity_distance = 1e-6;
  int side = 0;
};

/// A route from the germ to t that stays inside C \ [1, +inf).
ComplexPath path_to(Complex t, int side = 0);

/// The germ at 0 of the distinguished solution: x = t + O(t^2), analytic at 0.
SolutionGerm distinguished_germ(const Rational& lambda, const Rational& omega = 1);

/// (x, y) at the end of the path, by integrating I' = A(t)^{-1} I (controlled Dormand-Prince,
/// tolerance 1e-13). Throws std::invalid_argument for a path that violates its constraints and
/// ContinuationError when the step size underflows.
std::array<Complex, 2> continue_solution(const SolutionGerm& germ, const ComplexPath& path);

/// Convenience: continue_solution(germ, path_to(t, side)), or the germ itself for |t| <= 0.5.
std::array<Complex, 2> solution_at(const SolutionGerm& germ, Complex t, int side = 0);

/// Boundary values of (x, y) on (1, +inf) from the given side (+1 upper, -1 lower) at sorted
/// points t > 1.
std::vector<std::array<Complex, 2>> cut_side_values(const SolutionGerm& germ, const std::vector<double>& ts, int side);

/// Boundary of {|t| < R} minus the cut [1, +inf) and the disc |t - 1| < r.
struct ContourSpec {
  double R = 50.0;
  double r = 1e-2;
  double cut_offset = 1e-4;
  int samples_per_segment = 256;
  int escalations = 6;  // stability retries with R -> 2R, r -> r/2 before giving up
};

void validate(const ContourSpec& spec);

struct ContourSample {
  Complex t;
  Complex x;
  Complex y;
};

/// Samples of (x, y) around the closed contour, starting and ending at t = 1 - r. Segments:
/// small circle (upper half, clockwise), upper cut side, outer circle (counterclockwise), lower
/// cut side, small circle (lower half, clockwise).
struct ContourTrace {
  ContourSpec spec;
  Rational lambda, omega;
  std::vector<ContourSample> samples;   // closed: the last sample repeats t = 1 - r
  std::array<std::size_t, 6> segment_start{};  // index of the first sample of each segment, then size - 1
  double closure_error = 0.0;           // relative mismatch of (x, y) after one loop
};

/// Shared, immutable trace; cached by (lambda, omega, spec).
std::shared_ptr<const ContourTrace> contour_trace(const Rational& lambda, const Rational& omega,
                                                  const ContourSpec& spec);

struct ZeroCountReport {
  std::array<double, 5> increments{};  // argument increase along each segment (radians)
  double total_winding = 0.0;
  int zero_count = 0;
  int bound = 0;
  double max_phase_step = 0.0;
  int refined_samples = 0;
  double R = 0.0;
  double r = 0.0;
  bool stable = true;
  bool pass = false;
  /// Diagnostics of the decomposition I = y (P x / y + Q): zeros of y inside the contour and
  /// sign changes of Im(P x / y + Q) along the upper cut side.
  int y_zero_count = 0;
  int im_f_sign_changes = 0;
};

/// Winding count of f along the closed polyline `points` (first point repeated at the end is
/// optional), refining chords until every phase step is below pi / 8.
int winding_count(const std::function<Complex(Complex)>& f, std::vector<Complex> points, double* winding = nullptr);

/// Zeros of I = P x + Q y inside the contour by the argument principle. With check_stability the
/// count is repeated with R -> 2R and r -> r/2; on disagreement the contour is enlarged that way
/// (at most spec.escalations times) and the report describes the last contour used. A zero on
/// the contour triggers up to three retries with R scaled by 1 + 1e-3; persistent failure throws ContinuationError.
ZeroCountReport count_zeros_argument(const VSpaceElement& elem, const ContourSpec& spec, int bound,
                                     bool check_stability = true);

struct IntervalCount {
  int zeros = 0;               // sign changes, i.e. zeros of odd multiplicity
  std::vector<double> roots;   // polished by bisection
  int even_zero_candidates = 0;  // local minima of |I| at which I' changes sign and |I| ~ 0
  bool unresolved = false;     // two roots closer than 1e-10
};

/// Zeros of a real function on [a, b] from a Chebyshev-clustered grid of `grid` points.
IntervalCount count_zeros_interval(const std::function<double(double)>& f, double a, double b, int grid = 2000);

/// Zeros of I = P x + Q y on [a, b] with b <= 1 - 1e-6; 0 may lie inside or at an end.
/// Throws std::invalid_argument when the interval reaches [1, +inf).
IntervalCount count_zeros_interval(const VSpaceElement& elem, double a, double b, int grid = 2000);

/// Zeros of I = P x + Q y on [a, b] with a < b < 0, on a grid uniform in log(-t) so that both
/// ends are resolved.
IntervalCount count_zeros_negative(const VSpaceElement& elem, double a, double b, int grid = 3000);

/// Real values of (x, y) at sorted points t < 1 (exact germ near 0, real integration elsewhere).
std::vector<std::array<double, 2>> real_solution(const SolutionGerm& germ, const std::vector<double>& ts);

struct BoundVerdict {
  int d_bound = 0;      // dim + accuracy - 1 zeros in the cut plane
  int sigma_bound = 0;  // one less, for the zero at h0
  bool d_pass = false;
  std::optional<bool> sigma_pass;
};

BoundVerdict check_bound(const ZeroCountReport& report, const ApplicationSpace& space,
                         std::optional<int> sigma_zeros = std::nullopt);

/// max |I| / R^s over 64 directions at radius R and at 2R.
struct GrowthCheck {
  double c_r = 0.0;
  double c_2r = 0.0;
};
GrowthCheck growth_check(const VSpaceElement& elem, double R);

/// x(1 - eps) for eps = 1e-3 .. 1e-8; the limit at t = 1 is expected to be finite and nonzero.
std::vector<double> approach_one(const Rational& lambda, const Rational& omega = 1);

}  // namespace fcheb
