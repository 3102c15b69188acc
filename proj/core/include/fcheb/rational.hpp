#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fcheb {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "n", "-n" or "n/d" (whitespace-free). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise (d > 0, reduced).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Largest integer not exceeding q.
BigInt floor(const Rational& q);
std::int64_t floor_i64(const Rational& q);

bool is_integer(const Rational& q);

/// Exact square root when q is the square of a rational; false otherwise.
bool exact_sqrt(const Rational& q, Rational& root);

/// Dense univariate polynomial with rational coefficients, c[k] multiplies x^k.
/// Trailing zeros are trimmed on every mutating operation so that degree() is exact.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  static RatPoly constant(const Rational& c);
  static RatPoly monomial(int k, const Rational& c = Rational(1));

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  std::complex<double> eval(std::complex<double> z) const;

  RatPoly derivative() const;
  /// p(shift + scale * x)
  RatPoly compose_affine(const Rational& shift, const Rational& scale) const;
  RatPoly monic() const;

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const Rational& s);
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
  friend RatPoly operator*(const Rational& s, RatPoly a) { return a *= s; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws on division by zero polynomial.
  static void divmod(const RatPoly& num, const RatPoly& den, RatPoly& quot, RatPoly& rem);

  /// Human-readable form in the variable `var`, highest power first.
  std::string str(std::string_view var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Number of distinct real roots of p in the half-open interval (a, b], by Sturm's theorem.
int sturm_root_count(const RatPoly& p, const Rational& a, const Rational& b);

/// Number of distinct real roots of p on the whole real line.
int sturm_root_count_all(const RatPoly& p);

/// Exact 2x2 rational matrix.
struct Mat2 {
  std::array<std::array<Rational, 2>, 2> m{};

  static Mat2 identity();
  static Mat2 diag(const Rational& a, const Rational& b);
  static Mat2 of(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

  Rational& operator()(int i, int j) { return m[i][j]; }
  const Rational& operator()(int i, int j) const { return m[i][j]; }

  Rational det() const;
  Rational trace() const;
  bool is_zero() const;
  /// Throws std::domain_error when singular.
  Mat2 inverse() const;

  friend Mat2 operator+(const Mat2& a, const Mat2& b);
  friend Mat2 operator-(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(const Rational& s, const Mat2& a);
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.m == b.m; }
};

std::string to_string(const Mat2& a);

}  // namespace fcheb
