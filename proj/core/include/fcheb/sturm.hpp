#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcheb/picard_fuchs.hpp"
#include "fcheb/vspace.hpp"

namespace fcheb {

/// omega_{2k+1} = (k + lambda)(k + lambda - 1), omega_{2k+2} = (k + mu)(k + mu - 1),
/// Omega_k = diag(omega_{2k+1}, omega_{2k+2}) and
/// R_k = k [[lambda + k - 1, mu omega], [lambda / omega, mu + k - 1]].
struct OperatorData {
  int k = 0;
  Rational omega_odd, omega_even;
  Mat2 Omega;
  Mat2 R;
};

/// Throws std::invalid_argument for k < 0 or omega = 0.
OperatorData operator_data(int k, const Rational& lambda, const Rational& mu, const Rational& omega);

/// Largest relative defect of L(t^k J) = t^k Omega_k J - t^{k-1} R_k J with L = t(t-1) d^2/dt^2,
/// evaluated on jets of the unit-interval normal form. Each point is scaled by the size of the
/// right-hand terms, so the residual does not change when J is scaled.
double operator_identity_residual(const OperatorData& d, const std::vector<NormalFormJet>& jets);

/// Same on quadrature jets of a catalogued case at the given t (t not in {0, 1}).
double operator_identity_residual(const HamiltonianCase& c, int k, const std::vector<double>& t_grid,
                                  const QuadOptions& opt = {});

/// I_k = sum_{j<=k} B_j t^j I with B_k = Id and
///   B_j Omega_j - Omega_k B_j = B_{j+1} R_{j+1},  j = k-1, ..., 0,
/// so that x_k = x_P x + x_Q y and y_k = y_P x + y_Q y satisfy L x_k = omega_{2k+1} x_k and
/// L y_k = omega_{2k+2} y_k.
struct EigenFrame {
  int k = 0;
  Rational lambda, mu, omega;
  std::vector<Mat2> B;  // B[j], j = 0..k
  RatPoly x_P, x_Q, y_P, y_Q;
  Rational eigen_x, eigen_y;
};

/// Coincident omega_j (2 lambda an integer) throw std::domain_error; k < 0 and omega = 0 throw
/// std::invalid_argument.
EigenFrame eigenframe(int k, const Rational& lambda, const Rational& mu, const Rational& omega);

/// Largest |entry| of B_j Omega_j - Omega_k B_j - B_{j+1} R_{j+1} over j < k (zero when exact).
Rational sylvester_defect(const EigenFrame& f);

struct EigenResidual {
  double x = 0.0;
  double y = 0.0;
};

/// max |L x_k - omega x_k| relative to the sum of the term magnitudes, likewise for y_k.
EigenResidual eigen_residual(const EigenFrame& f, const std::vector<NormalFormJet>& jets);

/// Jets of the solution analytic at t = 0 (x = t + O(t^2)) at sorted t < 1, with J' = A^{-1} J.
std::vector<NormalFormJet> germ_jets(const Rational& lambda, const Rational& omega, const std::vector<double>& ts);

/// Zeros of P x + Q y on (-K, 0), the image of (-inf, h0) (or of (h0, +inf) when h1 < h0).
struct RealZeroVerdict {
  int count = 0;       // sign changes on [-K, -1e-9]
  int tail_zeros = 0;  // sign changes on [-64 K, -K]
  int bound = 0;       // max(deg P, 0) + max(deg Q, 0) + 1
  std::optional<int> chebyshev_bound;  // dim V_s - 1 when |lambda - mu| < 1
  bool unresolved = false;
  bool pass = false;   // count + tail_zeros within every bound
  std::vector<double> roots;
};

/// Throws std::invalid_argument when 2 lambda is an integer.
RealZeroVerdict real_zero_bound_check(const VSpaceElement& elem, double K = 1e3);

struct RealZeroTrial {
  std::string case_id;
  int trial = 0;
  Rational s;
  int dim = 0;
  RealZeroVerdict verdict;
  bool mirrored = false;  // h1 < h0: the half-line is (h0, +inf) in h
};

/// `trials` random elements of V_s in the unit-interval normal form of the case. Each trial draws
/// s = lambda* + r/2 (r in 0..5) and integer coefficients in [-9, 9] on the basis of V_s.
std::vector<RealZeroTrial> real_zero_sweep(const HamiltonianCase& c, int trials, std::uint64_t seed, double K = 1e3);

/// Cases whose normal form has 2 lambda not an integer.
bool sturm_eligible(const HamiltonianCase& c);

nlohmann::ordered_json operator_data_to_json(const OperatorData& d);
nlohmann::ordered_json eigenframe_to_json(const EigenFrame& f);

}  // namespace fcheb
