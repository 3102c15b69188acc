#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcheb/catalog.hpp"
#include "fcheb/rational.hpp"

namespace fcheb {

/// Growth of P x + Q y at infinity: |.| ~ t^exponent, times log t when `log` is set.
struct Growth {
  Rational exponent;
  bool log = false;

  /// Membership in V_s: exponent < s, or exponent == s without a logarithm.
  bool within(const Rational& s) const { return exponent < s || (exponent == s && !log); }
};

bool operator<(const Growth& a, const Growth& b);

struct DimVs {
  int dim = 0;
  /// Integer lambda: both integrals are polynomials and dim is [s] - 1.
  bool polynomial_branch = false;
};

/// Dimension of V_s for exponents lambda + mu = 2.
///   2s - 1              when lambda - mu and s - 1/2 are integers,
///   [s-lambda]+[s-mu]+2  otherwise,
/// and 0 for s = mu = 1/2. Throws std::invalid_argument when lambda + mu != 2 or s < lambda*.
DimVs dim_vs(const Rational& lambda, const Rational& mu, const Rational& s);

/// Growth of P x + Q y where (x, y) is the solution of the unit-interval normal form
/// (parameters lambda, omega) that is analytic at t = 0. The coefficients a, b of the
/// infinite frame are taken generic, so each frame element contributes separately.
/// Throws std::invalid_argument for P = Q = 0 or lambda in {0, 1, 2}.
Growth growth_exponent(const RatPoly& P, const RatPoly& Q, const Rational& lambda, const Rational& omega = 1);

/// Same for I = P(h) I1 + Q(h) I2 in the coordinates of an arbitrary system; the pair is
/// carried to the unit-interval normal form first.
Growth growth_exponent(const RatPoly& P, const RatPoly& Q, const FuchsianSystem& sys);

/// (P, Q) in the coordinates of `sys` rewritten as polynomials in t for the unit-interval
/// normal form of `sys`.
std::array<RatPoly, 2> to_unit_frame(const RatPoly& P, const RatPoly& Q, const FuchsianSystem& sys);

/// z_1 = t y - alpha_1 x, z_m = t z_{m-1} - alpha_m x (lambda > mu), or the same with x and y
/// exchanged when mu > lambda; each alpha_m cancels the leading power of the dominant frame element.
struct LadderElement {
  int m = 0;
  std::vector<Rational> alphas;
  RatPoly P, Q;
};

/// Throws std::invalid_argument for m < 1 and lambda in {0, 1, 2}.
LadderElement ladder_element(const Rational& lambda, int m, const Rational& omega = 1);

/// Coefficient of t^max(lambda, mu) in the dominant frame element's expansion of P x + Q y.
Rational dominant_coefficient(const RatPoly& P, const RatPoly& Q, const Rational& lambda, const Rational& omega = 1);

enum class BasisKind { kMonomialX, kMonomialY, kLadder };

struct BasisTag {
  BasisKind kind = BasisKind::kMonomialX;
  int power = 0;  // t^power multiplies x, y or z_m
  int m = 0;      // ladder index
  std::string str() const;
};

struct VSpaceElement {
  RatPoly P, Q;
  Rational lambda, omega;
  Rational s;
  Growth growth;
  std::optional<BasisTag> tag;
};

/// The element alpha(h) I1 + beta(h) I2 of a system, carried to its unit-interval normal form.
VSpaceElement table_element(const FuchsianSystem& sys, const RatPoly& alpha, const RatPoly& beta, const Rational& s);

/// A basis of V_s built from the monomials t^k x, t^l y and the ladder products t^j z_m,
/// kept in that order and added while they stay in V_s and independent. Throws
/// std::invalid_argument under the preconditions of dim_vs and for integer lambda.
std::vector<VSpaceElement> basis(const Rational& lambda, const Rational& s, const Rational& omega = 1);

/// dim V_s from the exact null space of the growth constraints on the coefficients of (P, Q).
int rank_oracle_dim(const Rational& lambda, const Rational& s, const Rational& omega = 1);

/// Numerical rank of [P_j(t_i) x(t_i) + Q_j(t_i) y(t_i)] at `points` uniformly random t in (0, 1).
int evaluation_rank(const std::vector<VSpaceElement>& elems, int points, std::uint64_t seed, double rel_tol = 1e-9);

/// Exact rank of a rational matrix (rows of equal length).
int exact_rank(std::vector<std::vector<Rational>> rows);

/// Degree data of the space of integrals of degree-n perturbations for a catalogued case, and
/// the exponent s used to bound its zeros. deg_alpha and deg_beta refer to the coefficients of
/// the first and second catalogued forms (-1 encodes the zero polynomial).
struct ApplicationSpace {
  std::string case_id;
  int n = 0;
  int deg_alpha = -1;
  int deg_beta = -1;
  int dim = 0;
  Rational s;
  std::optional<int> dim_vs;  // unset when s < lambda*
  int accuracy = 1;
  int h_power = 0;            // h^h_power * I = alpha I1 + beta I2
  bool first_strict = false;  // alpha I1 must grow strictly slower than t^s
  std::string domain;
};

/// Throws std::invalid_argument for unknown cases and n < 1 (n < 0 for case 8).
ApplicationSpace application_space(std::string_view case_id, int n);

nlohmann::ordered_json application_space_to_json(const ApplicationSpace& a);
/// Records for n = 1..n_max over every catalogued case.
nlohmann::ordered_json application_spaces_report(int n_max = 12);

}  // namespace fcheb
