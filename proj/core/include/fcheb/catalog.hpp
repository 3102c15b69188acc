#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcheb/rational.hpp"

namespace fcheb {

/// Which half-line of the real axis is removed from the h-plane: [h1, +inf) or (-inf, h1].
enum class CutDirection { kRight, kLeft };

/// Affine 2x2 system I(h) = A(h) I'(h) with A(h) = a0 + h * a1, together with the
/// data derived from it: critical values, exponents at infinity and the normal-form
/// parameter omega. Values are immutable once built by make_system().
struct FuchsianSystem {
  Mat2 a0;
  Mat2 a1;
  Rational h0;  // critical value where the distinguished solution is analytic
  Rational h1;
  Rational lambda;
  Rational mu;
  Rational omega{1};
  CutDirection cut = CutDirection::kRight;

  Mat2 at(const Rational& h) const { return a0 + h * a1; }
  std::array<std::array<double, 2>, 2> at(double h) const;
  RatPoly det_poly() const;
  RatPoly trace_poly() const;
};

/// Builds a system from its matrix coefficients; h0 selects which root of det A is the
/// analytic point. Throws std::invalid_argument when (H1)/(H2) fail, when the eigenvalues
/// of a1 are irrational, or when h0 is not a root of det A.
FuchsianSystem make_system(const Mat2& a0, const Mat2& a1, const Rational& h0, const Rational& omega = 1);

/// The normal form with critical values {0, 1}:
///   A(t) = [[(2t-1)/(2 lambda), omega/(2 lambda)], [1/(2 mu omega), (2t-1)/(2 mu)]].
/// lambda may exceed mu here; mu = 2 - lambda.
FuchsianSystem form7_system(const Rational& lambda, const Rational& omega = 1);

/// Normal form (6) with h0 = 0 and the given nonzero critical value h1.
FuchsianSystem form6_system(const Rational& lambda, const Rational& h1, const Rational& omega = 1);

struct HypothesisReport {
  bool h1 = false;  // a1 has real distinct eigenvalues
  bool h2 = false;  // det A quadratic with distinct real roots and trace A == (det A)'
  bool trace_identity = false;
  bool distinct_roots = false;
  std::array<double, 2> det_roots{};
  std::optional<std::array<Rational, 2>> det_roots_exact;
  std::array<double, 2> eigenvalues{};
  std::optional<std::array<Rational, 2>> eigenvalues_exact;
  std::string h3 = "pending: discharged numerically by the Picard-Fuchs residual check";
};

HypothesisReport verify_hypotheses(const Mat2& a0, const Mat2& a1);
HypothesisReport verify_hypotheses(const FuchsianSystem& sys);

struct Exponents {
  Rational lambda;
  Rational mu;
  Rational lambda_star;
};

/// lambda = 1/a1(0,0) when a1 is lower triangular (the convention of the normal forms and of
/// every catalogued row), otherwise lambda = 1/(larger eigenvalue). Throws on a repeated or
/// irrational eigenvalue.
Exponents exponents(const Mat2& a1);
Exponents exponents(const FuchsianSystem& sys);

/// lambda* = 2 for integer lambda, max(|lambda-1|, 1-|lambda-1|) otherwise.
Rational lambda_star(const Rational& lambda);

/// J = T I and h = shift + scale * u. The transformed matrix is
/// A_new(u) = T A(shift + scale u) T^{-1} / scale.
struct AffineTransform {
  Mat2 T = Mat2::identity();
  Rational shift{0};
  Rational scale{1};

  AffineTransform inverse() const;
  /// this o other: apply `other` first.
  AffineTransform compose(const AffineTransform& other) const;
  /// Returns (a0, a1) of the transformed family.
  std::array<Mat2, 2> apply(const Mat2& a0, const Mat2& a1) const;
  Rational map_h(const Rational& h) const { return (h - shift) / scale; }
  Rational unmap(const Rational& u) const { return shift + scale * u; }
};

enum class NormalForm { k5 = 5, k6 = 6, k7 = 7 };

struct NormalFormResult {
  FuchsianSystem system;
  AffineTransform transform;  // from the input system to `system`
};

/// Form 5: a1 diagonal, h0 at the origin. Form 6: additionally J = (x, y - x/omega) in the
/// coordinates of form 5. Form 7: form 5 with the argument rescaled so h1 maps to 1.
NormalFormResult to_normal_form(const FuchsianSystem& sys, NormalForm form);

FuchsianSystem apply_transform(const FuchsianSystem& sys, const AffineTransform& tr);

// ---------------------------------------------------------------------------

/// c * x^i * y^j; i may be negative (Laurent in x).
struct Monomial {
  Rational coef;
  int i = 0;
  int j = 0;
};

/// Laurent polynomial in x, polynomial in y. Terms are kept in canonical order: descending j,
/// then descending i; like terms combined.
class BivariateLaurent {
 public:
  BivariateLaurent() = default;
  explicit BivariateLaurent(std::vector<Monomial> terms);
  static BivariateLaurent parse(std::string_view text);

  const std::vector<Monomial>& terms() const { return terms_; }
  double operator()(double x, double y) const;
  /// value, d/dx, d/dy
  std::array<double, 3> eval_grad(double x, double y) const;
  bool has_negative_x_power() const;
  std::string str() const;

 private:
  std::vector<Monomial> terms_;
};

enum class Differential { kDx, kDy };

/// coef * x^a * y^b * d(x|y)
struct OneForm {
  int a = 0;
  int b = 0;
  Differential d = Differential::kDx;
  Rational coef{1};

  static OneForm parse(std::string_view text);
  std::string str() const;
};

struct HamiltonianCase {
  std::string id;                  // "1".."8" or "thm5"
  std::optional<Rational> param;   // a for thm5
  BivariateLaurent H;
  std::array<OneForm, 2> forms;
  std::optional<int> weight_power;  // integrating factor M(x) = x^k (case 8)
  Rational sigma_lo;
  std::optional<Rational> sigma_hi;  // nullopt encodes +infinity
  std::array<double, 2> center{};
  FuchsianSystem system;

  bool sigma_contains(double h) const;
  double sigma_hi_or(double fallback) const;
};

/// Identifiers of the catalogued rows: "1".."8" and "thm5".
const std::vector<std::string>& case_ids();

/// Throws std::invalid_argument for unknown ids, for a <= 2 with thm5, and when a is given
/// for a Table row.
HamiltonianCase get_case(std::string_view id, std::optional<Rational> a = std::nullopt);

/// All nine rows; thm5 with a = 3.
std::vector<HamiltonianCase> all_cases();

nlohmann::ordered_json case_to_json(const HamiltonianCase& c);
HamiltonianCase case_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json catalog_to_json(const std::vector<HamiltonianCase>& cases);
std::vector<HamiltonianCase> catalog_from_json(const nlohmann::ordered_json& j);
/// Serialized text exactly as shipped in data/catalog.json.
std::string catalog_text(const std::vector<HamiltonianCase>& cases);

}  // namespace fcheb
