#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcheb/continuation.hpp"
#include "fcheb/vspace.hpp"

namespace fcheb {

/// Random (or one explicit) element alpha(h) I1 + beta(h) I2 of the integral space of a case.
struct SweepConfig {
  std::string case_id;
  int n = 1;
  int trials = 200;
  std::uint64_t seed = 0;
  ContourSpec contour;
  bool stability = true;  // repeat each count with R -> 2R, r -> r/2
  bool sigma = true;      // also count zeros on the period annulus
  std::optional<RatPoly> alpha, beta;  // explicit element; runs a single trial
  bool raw = false;       // allow explicit degrees above those of the integral space
};

/// The period annulus in the t coordinate of the unit-interval normal form. One end is t = 0.
/// Unbounded annuli are cut at |t| = 64000 (`truncated`).
struct SigmaSpan {
  double a = 0.0, b = 0.0;
  bool truncated = false;
};
SigmaSpan sigma_span(const HamiltonianCase& c);

/// Zeros of the element on the open annulus (t = 0 excluded).
IntervalCount count_zeros_sigma(const VSpaceElement& elem, const HamiltonianCase& c);

struct TrialRow {
  std::string case_id;
  int n = 0;
  int trial = 0;
  RatPoly alpha, beta;
  VSpaceElement elem;
  ZeroCountReport report;
  BoundVerdict verdict;
  std::optional<int> sigma_zeros;
  std::vector<double> sigma_roots;

  /// Bound violated, unstable count or annulus bound violated.
  bool flagged() const;
};

/// Coefficients of alpha and beta are drawn uniformly from {-1, -0.999, ..., 1} with the degrees
/// of application_space(case, n). For cases 6-8 the draw is over the spanning set instead and
/// (alpha, beta) comes from exact_reduction. The generator is seeded from (seed, case, n). Throws
/// std::invalid_argument when the space is {0} or an explicit element has too high a degree.
std::vector<TrialRow> run_sweep(const SweepConfig& cfg);

/// case,n,trial,zero_count,bound,pass,R,r,stable
std::string count_csv(const std::vector<TrialRow>& rows);
/// case,n,trial,sigma_zeros,sigma_bound,sigma_pass (rows without an annulus count are skipped)
std::string sigma_csv(const std::vector<TrialRow>& rows);

/// Unwrapped argument of I along the counting contour.
std::string contour_phase_svg(const TrialRow& row, const ContourSpec& spec);
/// I on the period annulus (scaled by its largest value) with the located zeros marked.
std::string sigma_graph_svg(const TrialRow& row);

}  // namespace fcheb
