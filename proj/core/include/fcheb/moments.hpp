#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcheb/oval.hpp"

namespace fcheb {

using MomentIndex = std::pair<int, int>;

/// Weighted area moments I_ij(h) over {H < h} of one case at one energy.
struct MomentTable {
  std::string case_id;
  double h = 0.0;
  std::optional<int> nu;  // +1 / -1 for the symmetric quartics x^2 + y^2 + nu x^2 y^2
  std::map<MomentIndex, double> entries;

  double at(int i, int j) const;  // throws std::out_of_range for a missing entry
};

/// Moments with i + j <= max_total (i from -1 for case 8).
MomentTable make_moment_table(const HamiltonianCase& c, double h, int max_total, const QuadOptions& opt = {});

/// Largest |I_ij - I_ji| and |I_ij| with an odd index, relative to the largest entry.
double quartic_symmetry_defect(const MomentTable& t);

/// nu for cases 6 and 7, nullopt elsewhere.
std::optional<int> quartic_nu(const std::string& case_id);

struct RelationCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / max |term|
};

/// The three Green's-formula relations between moments of x^2 + y^2 + nu x^2 y^2 at even (i, j):
///   nu (i - j) I_{i+2,j+2} = (j + 1) I_{i+2,j} - (i + 1) I_{i,j+2}         (i != j only)
///   nu (i + 3) I_{i+2,i+2} = -(2i + 4) I_{i+2,i} + (i + 1) h I_{ii}
///   nu (i + 5) I_{i+4,0}   = (nu (i + 2) h - 1) I_{i+2,0} - 3 I_{i,2} + h I_{i,0}
/// Throws std::out_of_range when an entry is missing and std::invalid_argument for odd indices.
std::vector<RelationCheck> recurrence_quartic(const MomentTable& t, int i, int j, int nu);

/// Line integrals I_k = ccw integral of x^{k-5} y dx and weighted area moments of case 8.
struct Case8Table {
  double h = 0.0;
  std::vector<double> line;  // I_0 .. I_K
  std::map<MomentIndex, double> area;
};

Case8Table make_case8_table(double h, int k_max, int area_total, const QuadOptions& opt = {});

/// (k - 1/2) h I_{k+2} = (4 - 2k) I_{k+1} + (k - 7/2) I_k for k >= 0 and
/// I_{k,l+2} = (2l + 2) / (2k + 3l + 3) (I_{k+2,l} - I_{k+1,l}) for k >= -1, even l.
/// Throws std::invalid_argument for h = 0 or k < 0.
std::vector<RelationCheck> recurrence_case8(const Case8Table& t, int k, int l = 0);

/// Polynomial perturbation (f, g) of degree <= n; the first-order integral is
/// I(h) = ccw integral of M (g dx - f dy) with the case's integrating factor M.
struct Perturbation {
  std::map<MomentIndex, Rational> f, g;  // (a, b) -> coefficient of x^a y^b
  int degree() const;
};

/// c_ij with I(h) = sum c_ij I_ij(h) via Green's formula, I = -integral of div(M f, M g).
std::map<MomentIndex, Rational> divergence_coefficients(const HamiltonianCase& c, const Perturbation& p);

/// I(h) by direct quadrature of the line integral.
double perturbation_integral(const HamiltonianCase& c, const Perturbation& p, double h, const QuadOptions& opt = {});

/// Case 8: coefficients c_k of the line integrals I_0 .. I_n equivalent to the area form.
std::vector<Rational> case8_line_coefficients(const std::map<MomentIndex, Rational>& area);

/// h^{-prefactor} I(h) = alpha(h) J1(h) + beta(h) J2(h), where J1, J2 are the ccw integrals of the
/// case's two catalogued forms (not sign-normalized).
struct Reduction {
  std::string case_id;
  int n = 0;
  int prefactor = 0;
  std::vector<double> alpha, beta;      // ascending powers of h
  std::optional<RatPoly> alpha_exact, beta_exact;
  double residual = 0.0;                // max relative error at the check points
  std::vector<double> check_points;
  bool exact = false;
  std::optional<double> condition;      // of the scaled least-squares design
  std::optional<double> reduced_alpha_residual, reduced_beta_residual;
  std::string diagnosis;
};

/// Exact reductions for cases 6-7 (c over i + j <= n - 1) from the quartic relations.
/// Each map value is (coefficient of J1, coefficient of J2).
std::pair<RatPoly, RatPoly> reduce_quartic_moment(int i, int j, int nu);

/// Case 8: I_k in terms of (J1, J2) = (I_2, I_1) as Laurent polynomials in h (exponent -> coef).
using Laurent = std::map<int, Rational>;
std::pair<Laurent, Laurent> reduce_case8_line(int k);

/// Exact (alpha, beta) of sum c_ij I_ij for cases 6-7 and of h^{h_power} sum c_k I_k for case 8
/// (c = {(k, 0) -> c_k}); nullopt for the other cases.
std::optional<std::pair<RatPoly, RatPoly>> exact_reduction(const std::string& case_id, int n,
                                                           const std::map<MomentIndex, Rational>& c);

/// Indices of the spanning set of the integral space: (k, 0) for k <= n in case 8, (i, j) with
/// i + j <= n - 1 otherwise (odd i only for thm5).
std::vector<MomentIndex> spanning_set(const std::string& case_id, int n);

/// Reduction of sum c_ij I_ij (cases 1-7, thm5) or sum c_k I_k (case 8, c = {(k, 0) -> c_k}).
/// Exact for cases 6-8, least squares of the application-space degrees otherwise. The residual
/// compares against direct quadrature at five interior h values off the fitting grid.
Reduction reduce(const std::string& case_id, int n, const std::map<MomentIndex, Rational>& c,
                 const QuadOptions& opt = {});

/// Fit-pathway degree validation over the whole integral space: the worst relative residual of
/// any element under the full-degree fit, and under fits with deg alpha or deg beta lowered by one.
struct DegreeValidation {
  std::string case_id;
  int n = 0;
  int deg_alpha = 0, deg_beta = 0;
  int rank = 0;
  double full_residual = 0.0;
  std::optional<double> reduced_alpha, reduced_beta;  // absent when the degree is already -1
  double condition = 0.0;
  int grid = 0;
};
DegreeValidation validate_degrees(const std::string& case_id, int n, const QuadOptions& opt = {});

/// Numerical rank (threshold 1e-8 of the largest singular value) of a spanning set of the
/// integral space evaluated on a grid of h values.
int dim_check(const std::string& case_id, int n, const QuadOptions& opt = {});

/// m Chebyshev nodes on the period annulus minus 2% at each end (unbounded annuli are cut at
/// length 2).
std::vector<double> interior_grid(const HamiltonianCase& c, int m);

nlohmann::ordered_json reduction_to_json(const Reduction& r);
nlohmann::ordered_json degree_validation_to_json(const DegreeValidation& v);

}  // namespace fcheb
