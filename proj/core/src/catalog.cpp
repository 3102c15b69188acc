#include "fcheb/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fcheb {

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Roots of c2 h^2 + c1 h + c0 when the discriminant is a perfect rational square.
std::optional<std::array<Rational, 2>> exact_quadratic_roots(const Rational& c2, const Rational& c1,
                                                             const Rational& c0) {
  const Rational disc = c1 * c1 - 4 * c2 * c0;
  Rational s;
  if (c2 == 0 || !exact_sqrt(disc, s)) return std::nullopt;
  std::array<Rational, 2> r{(-c1 - s) / (2 * c2), (-c1 + s) / (2 * c2)};
  if (r[0] > r[1]) std::swap(r[0], r[1]);
  return r;
}

std::array<double, 2> float_quadratic_roots(double c2, double c1, double c0) {
  const double disc = c1 * c1 - 4 * c2 * c0;
  if (disc < 0 || c2 == 0) return {std::nan(""), std::nan("")};
  const double s = std::sqrt(disc);
  std::array<double, 2> r{(-c1 - s) / (2 * c2), (-c1 + s) / (2 * c2)};
  if (r[0] > r[1]) std::swap(r[0], r[1]);
  return r;
}

// Left eigenvector u with u (a - e I) = 0, normalized so the entry `pivot` is 1 when nonzero.
std::array<Rational, 2> left_eigenvector(const Mat2& a, const Rational& e, int pivot) {
  std::array<Rational, 2> u;
  if (a(0, 0) - e != 0 || a(1, 0) != 0) {
    u = {a(1, 0), e - a(0, 0)};
  } else {
    u = {a(1, 1) - e, -a(0, 1)};
  }
  if (u[0] == 0 && u[1] == 0) throw std::domain_error("left eigenvector is degenerate");
  const Rational norm = u[pivot] != 0 ? u[pivot] : u[1 - pivot];
  return {u[0] / norm, u[1] / norm};
}

}  // namespace

// ---------------------------------------------------------------------------

std::array<std::array<double, 2>, 2> FuchsianSystem::at(double h) const {
  std::array<std::array<double, 2>, 2> r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = to_double(a0(i, j)) + h * to_double(a1(i, j));
  return r;
}

RatPoly FuchsianSystem::det_poly() const {
  const Rational c1 = a0(0, 0) * a1(1, 1) + a1(0, 0) * a0(1, 1) - a0(0, 1) * a1(1, 0) - a1(0, 1) * a0(1, 0);
  return RatPoly({a0.det(), c1, a1.det()});
}

RatPoly FuchsianSystem::trace_poly() const { return RatPoly({a0.trace(), a1.trace()}); }

HypothesisReport verify_hypotheses(const Mat2& a0, const Mat2& a1) {
  HypothesisReport rep;
  FuchsianSystem tmp;
  tmp.a0 = a0;
  tmp.a1 = a1;

  const Rational tr = a1.trace();
  const Rational dt = a1.det();
  const Rational eig_disc = tr * tr - 4 * dt;
  rep.h1 = eig_disc > 0;
  rep.eigenvalues = float_quadratic_roots(1.0, -to_double(tr), to_double(dt));
  rep.eigenvalues_exact = exact_quadratic_roots(1, -tr, dt);

  const RatPoly det = tmp.det_poly();
  const Rational c2 = det.coeff(2), c1 = det.coeff(1), c0 = det.coeff(0);
  rep.distinct_roots = det.degree() == 2 && c1 * c1 - 4 * c2 * c0 > 0;
  rep.det_roots = float_quadratic_roots(to_double(c2), to_double(c1), to_double(c0));
  rep.det_roots_exact = exact_quadratic_roots(c2, c1, c0);
  rep.trace_identity = tmp.trace_poly() == det.derivative();
  rep.h2 = rep.distinct_roots && rep.trace_identity;
  return rep;
}

HypothesisReport verify_hypotheses(const FuchsianSystem& sys) { return verify_hypotheses(sys.a0, sys.a1); }

Rational lambda_star(const Rational& lambda) {
  if (is_integer(lambda)) return 2;
  const Rational d = abs_q(lambda - 1);
  return std::max(d, Rational(1 - d));
}

Exponents exponents(const Mat2& a1) {
  Rational first, second;
  if (a1(0, 1) == 0) {
    first = a1(0, 0);
    second = a1(1, 1);
  } else {
    const auto eig = exact_quadratic_roots(1, -a1.trace(), a1.det());
    if (!eig) throw std::invalid_argument("eigenvalues of A' are not rational");
    first = (*eig)[1];
    second = (*eig)[0];
  }
  if (first == second) throw std::invalid_argument("A' has a repeated eigenvalue");
  if (first == 0 || second == 0) throw std::invalid_argument("A' has a zero eigenvalue");
  Exponents e;
  e.lambda = 1 / first;
  e.mu = 1 / second;
  e.lambda_star = lambda_star(e.lambda);
  return e;
}

Exponents exponents(const FuchsianSystem& sys) { return exponents(sys.a1); }

FuchsianSystem make_system(const Mat2& a0, const Mat2& a1, const Rational& h0, const Rational& omega) {
  const auto rep = verify_hypotheses(a0, a1);
  if (!rep.h1) throw std::invalid_argument("(H1) fails: A' lacks real distinct eigenvalues");
  if (!rep.h2) throw std::invalid_argument("(H2) fails for the given matrix family");
  if (!rep.det_roots_exact) throw std::invalid_argument("critical values are irrational");
  const auto& roots = *rep.det_roots_exact;
  FuchsianSystem s;
  s.a0 = a0;
  s.a1 = a1;
  if (roots[0] == h0) {
    s.h1 = roots[1];
  } else if (roots[1] == h0) {
    s.h1 = roots[0];
  } else {
    throw std::invalid_argument("h0 = " + to_string(h0) + " is not a root of det A");
  }
  s.h0 = h0;
  const auto e = exponents(a1);
  s.lambda = e.lambda;
  s.mu = e.mu;
  s.omega = omega;
  s.cut = s.h1 > s.h0 ? CutDirection::kRight : CutDirection::kLeft;
  return s;
}

FuchsianSystem form7_system(const Rational& lambda, const Rational& omega) {
  const Rational mu = 2 - lambda;
  if (lambda == 0 || mu == 0) throw std::invalid_argument("form (7) needs lambda not in {0, 2}");
  if (omega == 0) throw std::invalid_argument("omega must be nonzero");
  FuchsianSystem s;
  s.a0 = Mat2::of(-1 / (2 * lambda), omega / (2 * lambda), 1 / (2 * mu * omega), -1 / (2 * mu));
  s.a1 = Mat2::diag(1 / lambda, 1 / mu);
  s.h0 = 0;
  s.h1 = 1;
  s.lambda = lambda;
  s.mu = mu;
  s.omega = omega;
  return s;
}

FuchsianSystem form6_system(const Rational& lambda, const Rational& h1, const Rational& omega) {
  const Rational mu = 2 - lambda;
  if (lambda == 0 || mu == 0 || omega == 0 || h1 == 0)
    throw std::invalid_argument("form (6) needs lambda not in {0, 2}, omega != 0, h1 != 0");
  FuchsianSystem s;
  s.a0 = Mat2::of(0, omega * h1 / (2 * lambda), 0, -h1 / (lambda * mu));
  s.a1 = Mat2::of(1 / lambda, 0, (lambda - mu) / (lambda * mu * omega), 1 / mu);
  s.h0 = 0;
  s.h1 = h1;
  s.lambda = lambda;
  s.mu = mu;
  s.omega = omega;
  s.cut = h1 > 0 ? CutDirection::kRight : CutDirection::kLeft;
  return s;
}

// ---------------------------------------------------------------------------

AffineTransform AffineTransform::inverse() const {
  AffineTransform r;
  r.T = T.inverse();
  r.shift = -shift / scale;
  r.scale = 1 / scale;
  return r;
}

AffineTransform AffineTransform::compose(const AffineTransform& other) const {
  AffineTransform r;
  r.T = T * other.T;
  r.shift = other.shift + other.scale * shift;
  r.scale = other.scale * scale;
  return r;
}

std::array<Mat2, 2> AffineTransform::apply(const Mat2& a0, const Mat2& a1) const {
  const Mat2 Ti = T.inverse();
  return {(1 / scale) * (T * (a0 + shift * a1) * Ti), T * a1 * Ti};
}

FuchsianSystem apply_transform(const FuchsianSystem& sys, const AffineTransform& tr) {
  FuchsianSystem out = sys;
  const auto [b0, b1] = tr.apply(sys.a0, sys.a1);
  out.a0 = b0;
  out.a1 = b1;
  out.h0 = tr.map_h(sys.h0);
  out.h1 = tr.map_h(sys.h1);
  out.cut = out.h1 > out.h0 ? CutDirection::kRight : CutDirection::kLeft;
  return out;
}

NormalFormResult to_normal_form(const FuchsianSystem& sys, NormalForm form) {
  const Rational& lam = sys.lambda;
  const Rational& mu = sys.mu;
  const Rational& w = sys.omega;
  if (lam == mu) throw std::invalid_argument("normal form needs distinct exponents");

  const auto ul = left_eigenvector(sys.a1, 1 / lam, 0);
  const auto um = left_eigenvector(sys.a1, 1 / mu, 1);
  AffineTransform diag;
  diag.T = Mat2::of(ul[0], ul[1], um[0], um[1]);
  if (diag.T.det() == 0) throw std::invalid_argument("eigenvectors of A' are not independent");
  diag.shift = sys.h0;

  const auto [c0, c1] = diag.apply(sys.a0, sys.a1);
  if (c0(0, 1) == 0) throw std::invalid_argument("system is reducible (zero coupling)");
  const Rational hc = sys.h1 - sys.h0;
  AffineTransform scaling;
  scaling.T = Mat2::diag(w * hc / (2 * lam * c0(0, 1)), 1);
  AffineTransform tr = scaling.compose(diag);

  const FuchsianSystem f5 = apply_transform(sys, tr);
  const Mat2 want0 = Mat2::of(-hc / (2 * lam), w * hc / (2 * lam), hc / (2 * mu * w), -hc / (2 * mu));
  const Mat2 want1 = Mat2::diag(1 / lam, 1 / mu);
  if (!(f5.a0 == want0) || !(f5.a1 == want1))
    throw std::logic_error("normal form (5) mismatch: input violates (H2)");

  switch (form) {
    case NormalForm::k5:
      return {f5, tr};
    case NormalForm::k6: {
      AffineTransform shear;
      shear.T = Mat2::of(1, 0, -1 / w, 1);
      tr = shear.compose(tr);
      return {apply_transform(sys, tr), tr};
    }
    case NormalForm::k7: {
      AffineTransform rescale;
      rescale.scale = hc;
      tr = rescale.compose(tr);
      return {apply_transform(sys, tr), tr};
    }
  }
  throw std::invalid_argument("unknown normal form");
}

// ---------------------------------------------------------------------------

BivariateLaurent::BivariateLaurent(std::vector<Monomial> terms) {
  std::map<std::pair<int, int>, Rational> acc;
  for (const auto& t : terms) acc[{t.j, t.i}] += t.coef;
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (it->second != 0) terms_.push_back({it->second, it->first.second, it->first.first});
}

namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out.push_back(c);
  return out;
}

// Parses "[sign][q*]x^a*y^b" into a monomial. The bare sign or a missing coefficient means 1.
Monomial parse_monomial(std::string_view term) {
  Monomial m{Rational(1), 0, 0};
  std::size_t pos = 0;
  if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
    if (term[0] == '-') m.coef = -1;
    pos = 1;
  }
  if (pos >= term.size()) throw std::invalid_argument("empty monomial");
  while (pos <= term.size()) {
    const std::size_t star = term.find('*', pos);
    const std::string_view piece = term.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
    if (piece.empty()) throw std::invalid_argument("malformed monomial: " + std::string(term));
    if (piece[0] == 'x' || piece[0] == 'y') {
      int e = 1;
      if (piece.size() > 1) {
        if (piece[1] != '^') throw std::invalid_argument("malformed factor: " + std::string(piece));
        e = std::stoi(std::string(piece.substr(2)));
      }
      (piece[0] == 'x' ? m.i : m.j) += e;
    } else {
      m.coef *= parse_rational(piece);
    }
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return m;
}

std::string monomial_body(int i, int j) {
  std::string s;
  auto factor = [&](char v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += '*';
    s += v;
    if (e != 1) s += "^" + std::to_string(e);
  };
  factor('x', i);
  factor('y', j);
  return s;
}

}  // namespace

BivariateLaurent BivariateLaurent::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  std::vector<Monomial> terms;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    const bool end = k == s.size();
    if (end || ((s[k] == '+' || s[k] == '-') && s[k - 1] != '^' && s[k - 1] != '*')) {
      terms.push_back(parse_monomial(std::string_view(s).substr(start, k - start)));
      start = k;
    }
  }
  return BivariateLaurent(std::move(terms));
}

double BivariateLaurent::operator()(double x, double y) const { return eval_grad(x, y)[0]; }

std::array<double, 3> BivariateLaurent::eval_grad(double x, double y) const {
  std::array<double, 3> r{0.0, 0.0, 0.0};
  for (const auto& t : terms_) {
    const double c = to_double(t.coef);
    const double xi = std::pow(x, t.i);
    const double yj = std::pow(y, t.j);
    r[0] += c * xi * yj;
    if (t.i != 0) r[1] += c * t.i * std::pow(x, t.i - 1) * yj;
    if (t.j != 0) r[2] += c * t.j * xi * std::pow(y, t.j - 1);
  }
  return r;
}

bool BivariateLaurent::has_negative_x_power() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Monomial& m) { return m.i < 0; });
}

std::string BivariateLaurent::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    const bool neg = t.coef < 0;
    const Rational mag = neg ? Rational(-t.coef) : t.coef;
    if (k == 0) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    const std::string body = monomial_body(t.i, t.j);
    if (body.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += body;
    } else {
      out += to_string(mag) + "*" + body;
    }
  }
  return out;
}

OneForm OneForm::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.size() < 2) throw std::invalid_argument("malformed one-form: " + std::string(text));
  OneForm f;
  const std::string tail = s.substr(s.size() - 2);
  if (tail == "dx") {
    f.d = Differential::kDx;
  } else if (tail == "dy") {
    f.d = Differential::kDy;
  } else {
    throw std::invalid_argument("one-form must end in dx or dy: " + std::string(text));
  }
  const std::string body = s.substr(0, s.size() - 2);
  if (!body.empty()) {
    const Monomial m = parse_monomial(body);
    f.a = m.i;
    f.b = m.j;
    f.coef = m.coef;
  }
  return f;
}

std::string OneForm::str() const {
  std::string body = monomial_body(a, b);
  if (coef != 1) body = body.empty() ? to_string(coef) : to_string(coef) + "*" + body;
  if (body.empty()) body = "1";
  return body + (d == Differential::kDx ? " dx" : " dy");
}

bool HamiltonianCase::sigma_contains(double h) const {
  return h > to_double(sigma_lo) && (!sigma_hi || h < to_double(*sigma_hi));
}

double HamiltonianCase::sigma_hi_or(double fallback) const {
  return sigma_hi ? to_double(*sigma_hi) : fallback;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& case_ids() {
  static const std::vector<std::string> ids{"1", "2", "3", "4", "5", "6", "7", "8", "thm5"};
  return ids;
}

namespace {

struct Row {
  const char* H;
  const char* form1;
  const char* form2;
  Mat2 a0, a1;
  Rational h0;
  Rational lo;
  std::optional<Rational> hi;
};

Row table_row(int id) {
  switch (id) {
    case 1:
      return {"y^2 + x^2 - x^3", "y dx", "x*y dx", Mat2::of(0, R(-4, 15), 0, R(-16, 105)),
              Mat2::of(R(6, 5), 0, R(4, 35), R(6, 7)), 0, 0, R(4, 27)};
    case 2:
      return {"y^2 + x^2 - x*y^2", "y dx", "x*y dx", Mat2::of(0, R(-4, 3), 0, R(-16, 15)),
              Mat2::of(R(4, 3), 0, R(4, 15), R(4, 5)), 0, 0, R(1)};
    case 3:
      return {"1/2*y^2 + 1/2*x^2 - 1/3*x^3 + x*y^2", "y dx", "x^2*y dx", Mat2::of(0, R(-1, 2), 0, R(-3, 16)),
              Mat2::of(R(3, 2), 0, R(3, 16), R(3, 4)), 0, 0, R(1, 6)};
    case 4:
      return {"y^2 + x^2 + x^4", "y dx", "x^2*y dx", Mat2::of(0, R(-2, 3), 0, R(4, 15)),
              Mat2::of(R(4, 3), 0, R(-2, 15), R(4, 5)), 0, 0, std::nullopt};
    case 5:
      return {"y^2 + x^2 - x^4", "y dx", "x^2*y dx", Mat2::of(0, R(-2, 3), 0, R(-4, 15)),
              Mat2::of(R(4, 3), 0, R(2, 15), R(4, 5)), 0, 0, R(1, 4)};
    case 6:
      return {"y^2 + x^2 + x^2*y^2", "y dx", "x^2*y dx", Mat2::of(0, R(-2), 0, R(4, 3)),
              Mat2::of(R(2), 0, R(-2, 3), R(2, 3)), 0, 0, std::nullopt};
    case 7:
      return {"y^2 + x^2 - x^2*y^2", "y dx", "x^2*y dx", Mat2::of(0, R(-2), 0, R(-4, 3)),
              Mat2::of(R(2), 0, R(2, 3), R(2, 3)), 0, 0, R(1)};
    case 8:
      return {"x^-3*y^2 - 2*x^-1 + x^-2", "x^-3*y dx", "x^-4*y dx", Mat2::of(0, R(4, 3), 0, R(16, 15)),
              Mat2::of(R(4, 3), 0, R(4, 15), R(4, 5)), -1, -1, R(0)};
    default:
      throw std::invalid_argument("unknown case id");
  }
}

}  // namespace

HamiltonianCase get_case(std::string_view id, std::optional<Rational> a) {
  HamiltonianCase c;
  c.id = std::string(id);
  if (id == "thm5") {
    const Rational av = a.value_or(Rational(3));
    if (av <= 2) throw std::invalid_argument("thm5 requires a > 2");
    c.param = av;
    c.H = BivariateLaurent({{1, 2, 0}, {1, 0, 2}, {-1, 4, 0}, {-av, 2, 2}, {-1, 0, 4}});
    c.forms = {OneForm::parse("x^2 dy"), OneForm::parse("x^2*y^2 dy")};
    const Rational q = 15 * (av + 2);
    const Mat2 a0 = Mat2::of(R(-1, 3), (av - 2) / 3, -1 / q, (av - 14) / q);
    const Mat2 a1 = Mat2::of(R(4, 3), 0, 4 / q, R(4, 5));
    c.system = make_system(a0, a1, R(1, 4));
    c.sigma_lo = 1 / (av + 2);
    c.sigma_hi = R(1, 4);
    c.center = {std::sqrt(0.5), 0.0};
    return c;
  }
  if (a) throw std::invalid_argument("parameter a is only meaningful for thm5");
  int n = 0;
  if (id.size() == 1 && id[0] >= '1' && id[0] <= '8') n = id[0] - '0';
  if (n == 0) throw std::invalid_argument("unknown case id: " + std::string(id));
  const Row row = table_row(n);
  c.H = BivariateLaurent::parse(row.H);
  c.forms = {OneForm::parse(row.form1), OneForm::parse(row.form2)};
  c.system = make_system(row.a0, row.a1, row.h0);
  c.sigma_lo = row.lo;
  c.sigma_hi = row.hi;
  if (n == 8) {
    c.weight_power = -4;
    c.center = {1.0, 0.0};
  }
  return c;
}

std::vector<HamiltonianCase> all_cases() {
  std::vector<HamiltonianCase> out;
  for (const auto& id : case_ids()) out.push_back(get_case(id));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json mat_json(const Mat2& a0, const Mat2& a1) {
  auto entry = [&](int i, int j) { return nlohmann::ordered_json::array({to_string(a0(i, j)), to_string(a1(i, j))}); };
  return nlohmann::ordered_json::array({nlohmann::ordered_json::array({entry(0, 0), entry(0, 1)}),
                                        nlohmann::ordered_json::array({entry(1, 0), entry(1, 1)})});
}

}  // namespace

nlohmann::ordered_json case_to_json(const HamiltonianCase& c) {
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["param"] = c.param ? nlohmann::ordered_json(to_string(*c.param)) : nlohmann::ordered_json(nullptr);
  j["H"] = c.H.str();
  j["forms"] = {c.forms[0].str(), c.forms[1].str()};
  j["M"] = c.weight_power ? nlohmann::ordered_json("x^" + std::to_string(*c.weight_power))
                          : nlohmann::ordered_json(nullptr);
  j["sigma"] = {to_string(c.sigma_lo), c.sigma_hi ? to_string(*c.sigma_hi) : std::string("inf")};
  j["A"] = mat_json(c.system.a0, c.system.a1);
  j["h0"] = to_string(c.system.h0);
  j["h1"] = to_string(c.system.h1);
  j["lambda"] = to_string(c.system.lambda);
  j["mu"] = to_string(c.system.mu);
  j["center"] = {c.center[0], c.center[1]};
  return j;
}

HamiltonianCase case_from_json(const nlohmann::ordered_json& j) {
  HamiltonianCase c;
  c.id = j.at("id").get<std::string>();
  if (!j.at("param").is_null()) c.param = parse_rational(j.at("param").get<std::string>());
  c.H = BivariateLaurent::parse(j.at("H").get<std::string>());
  c.forms = {OneForm::parse(j.at("forms").at(0).get<std::string>()),
             OneForm::parse(j.at("forms").at(1).get<std::string>())};
  if (!j.at("M").is_null()) {
    const auto m = j.at("M").get<std::string>();
    if (m.rfind("x^", 0) != 0) throw std::invalid_argument("M must be a power of x: " + m);
    c.weight_power = std::stoi(m.substr(2));
  }
  c.sigma_lo = parse_rational(j.at("sigma").at(0).get<std::string>());
  const auto hi = j.at("sigma").at(1).get<std::string>();
  if (hi != "inf") c.sigma_hi = parse_rational(hi);
  Mat2 a0, a1;
  const auto& A = j.at("A");
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) {
      a0(r, s) = parse_rational(A.at(r).at(s).at(0).get<std::string>());
      a1(r, s) = parse_rational(A.at(r).at(s).at(1).get<std::string>());
    }
  c.system = make_system(a0, a1, parse_rational(j.at("h0").get<std::string>()));
  if (to_string(c.system.h1) != j.at("h1").get<std::string>() ||
      to_string(c.system.lambda) != j.at("lambda").get<std::string>() ||
      to_string(c.system.mu) != j.at("mu").get<std::string>())
    throw std::invalid_argument("catalog entry " + c.id + ": stored h1/lambda/mu disagree with A");
  c.center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
  return c;
}

nlohmann::ordered_json catalog_to_json(const std::vector<HamiltonianCase>& cases) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : cases) j["cases"].push_back(case_to_json(c));
  return j;
}

std::vector<HamiltonianCase> catalog_from_json(const nlohmann::ordered_json& j) {
  if (j.at("schema").get<int>() != 1) throw std::invalid_argument("unsupported catalog schema");
  std::vector<HamiltonianCase> out;
  for (const auto& c : j.at("cases")) out.push_back(case_from_json(c));
  return out;
}

std::string catalog_text(const std::vector<HamiltonianCase>& cases) { return catalog_to_json(cases).dump(2) + "\n"; }

}  // namespace fcheb
