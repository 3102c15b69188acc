#include "fcheb/rational.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fcheb {

namespace mp = boost::multiprecision;

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto digits_ok = [](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den[0] == '-')
    throw std::invalid_argument("malformed rational: " + std::string(text));
  std::string n(num.front() == '+' ? num.substr(1) : num);
  const BigInt d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(BigInt(n), d);
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << mp::numerator(q);
  if (mp::denominator(q) != 1) os << '/' << mp::denominator(q);
  return os.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

BigInt floor(const Rational& q) {
  const BigInt n = mp::numerator(q);
  const BigInt d = mp::denominator(q);
  BigInt f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

std::int64_t floor_i64(const Rational& q) { return floor(q).convert_to<std::int64_t>(); }

bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  const BigInt n = mp::numerator(q);
  const BigInt d = mp::denominator(q);
  const BigInt rn = mp::sqrt(n);
  const BigInt rd = mp::sqrt(d);
  if (rn * rn != n || rd * rd != d) return false;
  root = Rational(rn, rd);
  return true;
}

// ---------------------------------------------------------------------------

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(const Rational& c) { return RatPoly({c}); }

RatPoly RatPoly::monomial(int k, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational RatPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational RatPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RatPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

std::complex<double> RatPoly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + to_double(*it);
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<int>(k);
  return RatPoly(std::move(d));
}

RatPoly RatPoly::compose_affine(const Rational& shift, const Rational& scale) const {
  // Horner in the polynomial ring: acc = acc * (shift + scale x) + c_k
  const RatPoly lin({shift, scale});
  RatPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + RatPoly::constant(*it);
  return acc;
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return {};
  RatPoly r = *this;
  r *= Rational(1) / leading();
  return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const Rational& s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(std::move(r));
}

void RatPoly::divmod(const RatPoly& num, const RatPoly& den, RatPoly& quot, RatPoly& rem) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  rem = num;
  std::vector<Rational> q(num.degree() >= den.degree() ? num.degree() - den.degree() + 1 : 0);
  while (!rem.is_zero() && rem.degree() >= den.degree()) {
    const int shift = rem.degree() - den.degree();
    const Rational f = rem.leading() / den.leading();
    q[static_cast<std::size_t>(shift)] = f;
    rem -= RatPoly::monomial(shift, f) * den;
  }
  quot = RatPoly(std::move(q));
}

std::string RatPoly::str(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& v = c_[static_cast<std::size_t>(k)];
    if (v == 0) continue;
    Rational mag = v < 0 ? Rational(-v) : v;
    if (first) {
      if (v < 0) os << '-';
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit || k == 0) os << to_string(mag);
    if (k > 0) {
      if (!unit) os << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
  std::vector<RatPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    RatPoly q, r;
    RatPoly::divmod(chain[chain.size() - 2], chain.back(), q, r);
    if (r.is_zero()) break;
    chain.push_back(r * Rational(-1));
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int sign_changes(const std::vector<Rational>& values) {
  int changes = 0;
  int prev = 0;
  for (const auto& v : values) {
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

int sturm_root_count(const RatPoly& p, const Rational& a, const Rational& b) {
  if (p.degree() <= 0) return 0;
  const auto chain = sturm_chain(p);
  std::vector<Rational> va, vb;
  for (const auto& q : chain) {
    va.push_back(q(a));
    vb.push_back(q(b));
  }
  return sign_changes(va) - sign_changes(vb);
}

int sturm_root_count_all(const RatPoly& p) {
  if (p.degree() <= 0) return 0;
  const auto chain = sturm_chain(p);
  // Signs at -inf / +inf are those of the leading coefficients.
  std::vector<Rational> lo, hi;
  for (const auto& q : chain) {
    const Rational lead = q.leading();
    hi.push_back(lead);
    lo.push_back(q.degree() % 2 == 0 ? lead : Rational(-lead));
  }
  return sign_changes(lo) - sign_changes(hi);
}

// ---------------------------------------------------------------------------

Mat2 Mat2::identity() { return diag(1, 1); }

Mat2 Mat2::diag(const Rational& a, const Rational& b) { return of(a, 0, 0, b); }

Mat2 Mat2::of(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  Mat2 r;
  r.m = {{{a, b}, {c, d}}};
  return r;
}

Rational Mat2::det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
Rational Mat2::trace() const { return m[0][0] + m[1][1]; }

bool Mat2::is_zero() const {
  return m[0][0] == 0 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 0;
}

Mat2 Mat2::inverse() const {
  const Rational d = det();
  if (d == 0) throw std::domain_error("singular 2x2 matrix");
  return of(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d);
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
  return r;
}

Mat2 operator*(const Rational& s, const Mat2& a) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}

std::string to_string(const Mat2& a) {
  return "[[" + to_string(a(0, 0)) + ", " + to_string(a(0, 1)) + "], [" + to_string(a(1, 0)) + ", " +
         to_string(a(1, 1)) + "]]";
}

}  // namespace fcheb
