#include "fcheb/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <Eigen/Dense>

#include "fcheb/vspace.hpp"

namespace fcheb {

namespace {

const std::vector<double> kCheckFractions = {0.13, 0.31, 0.52, 0.71, 0.88};

bool is_even(int k) { return k % 2 == 0; }

std::pair<double, double> annulus(const HamiltonianCase& c) {
  const double lo = to_double(c.sigma_lo);
  return {lo, c.sigma_hi_or(lo + 2.0)};
}

std::vector<double> check_points(const HamiltonianCase& c) {
  const auto [lo, hi] = annulus(c);
  std::vector<double> out;
  for (double f : kCheckFractions) out.push_back(lo + f * (hi - lo));
  return out;
}

// Columns of the spanning set of the integral space for the case and n.
std::vector<MomentIndex> spanning_indices(const HamiltonianCase& c, int n) {
  std::vector<MomentIndex> out;
  if (c.id == "8") {
    for (int k = 0; k <= n; ++k) out.emplace_back(k, 0);
    return out;
  }
  for (int t = 0; t <= n - 1; ++t)
    for (int i = 0; i <= t; ++i) {
      const int j = t - i;
      if (c.id == "thm5" && is_even(i)) continue;
      out.emplace_back(i, j);
    }
  return out;
}

int max_total(const std::vector<MomentIndex>& idx) {
  int m = 0;
  for (const auto& [i, j] : idx) m = std::max(m, i + j);
  return m;
}

// Values of the spanning-set elements at h (line integrals I_k for case 8, area moments
// otherwise), with the size of each integrand.
std::vector<QuadResult> spanning_values(const HamiltonianCase& c, double h, const std::vector<MomentIndex>& idx,
                                        const QuadOptions& opt) {
  std::vector<QuadResult> out;
  if (c.id == "8") {
    const OvalSample s = trace_oval(c, h, opt);
    for (const auto& [k, l] : idx) out.push_back(line_integral(s, OneForm{k - 5, 1, Differential::kDx}, 0));
    return out;
  }
  const auto tab = moment_table(c, h, 0, std::max(max_total(idx), 0), opt);
  for (const auto& key : idx) {
    const MomentIntegral& m = tab.at(key);
    out.push_back({m.value, m.est_error, m.magnitude});
  }
  return out;
}

std::array<double, 2> form_integrals(const HamiltonianCase& c, double h, const QuadOptions& opt) {
  const OvalSample s = trace_oval(c, h, opt);
  return {line_integral(s, c.forms[0], 0).value, line_integral(s, c.forms[1], 0).value};
}

std::vector<double> to_doubles(const RatPoly& p) {
  std::vector<double> out;
  for (const auto& q : p.coeffs()) out.push_back(to_double(q));
  return out;
}

double horner(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

RelationCheck make_check(std::string name, double lhs, double rhs, std::initializer_list<double> terms) {
  double scale = 0.0;
  for (double t : terms) scale = std::max(scale, std::abs(t));
  return {std::move(name), lhs, rhs, scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale};
}

// Coefficients of p(u) with u = a h + b, re-expanded in powers of h.
std::vector<double> affine_to_h(const std::vector<double>& pu, double a, double b) {
  std::vector<double> out(pu.size(), 0.0);
  std::vector<double> power{1.0};  // (a h + b)^k
  for (std::size_t k = 0; k < pu.size(); ++k) {
    for (std::size_t m = 0; m < power.size(); ++m) out[m] += pu[k] * power[m];
    std::vector<double> next(power.size() + 1, 0.0);
    for (std::size_t m = 0; m < power.size(); ++m) {
      next[m] += b * power[m];
      next[m + 1] += a * power[m];
    }
    power = std::move(next);
  }
  return out;
}

void validate_coefficients(const HamiltonianCase& c, int n, const std::map<MomentIndex, Rational>& coef) {
  for (const auto& [key, v] : coef) {
    const auto [i, j] = key;
    if (c.id == "8") {
      if (j != 0 || i < 0 || i > n)
        throw std::invalid_argument("case 8 coefficients are indexed (k, 0) with 0 <= k <= n");
      continue;
    }
    if (i < 0 || j < 0 || i + j > n - 1)
      throw std::invalid_argument("moment index outside i + j <= n - 1");
    if (c.id == "thm5" && is_even(i) && v != 0)
      throw std::invalid_argument("thm5 integrals involve odd powers of x only");
  }
}

struct LsqFit {
  Eigen::VectorXd coef;
  double condition = 0.0;
};

LsqFit least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index k = 0; k < scale.size(); ++k)
    if (scale(k) == 0.0) scale(k) = 1.0;
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  LsqFit out;
  out.condition = sv.size() == 0 ? 0.0 : sv(0) / sv(sv.size() - 1);
  out.coef = svd.solve(b).cwiseQuotient(scale);
  return out;
}

// Design columns u^k J1 (k <= da) then u^k J2 (k <= db).
Eigen::MatrixXd design(const std::vector<double>& us, const std::vector<std::array<double, 2>>& J, int da, int db) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(us.size()), std::max(0, da + 1) + std::max(0, db + 1));
  for (std::size_t r = 0; r < us.size(); ++r) {
    Eigen::Index col = 0;
    for (int k = 0; k <= da; ++k) A(r, col++) = std::pow(us[r], k) * J[r][0];
    for (int k = 0; k <= db; ++k) A(r, col++) = std::pow(us[r], k) * J[r][1];
  }
  return A;
}

struct FitGrid {
  double lo = 0.0, hi = 0.0;
  std::vector<double> hs, us;
  std::vector<std::array<double, 2>> J;
  double u_of(double h) const { return (2.0 * h - lo - hi) / (hi - lo); }
};

FitGrid fit_grid(const HamiltonianCase& c, int m, const QuadOptions& opt) {
  FitGrid g;
  std::tie(g.lo, g.hi) = annulus(c);
  g.hs = interior_grid(c, m);
  for (double h : g.hs) {
    g.us.push_back(g.u_of(h));
    g.J.push_back(form_integrals(c, h, opt));
  }
  return g;
}

double fit_residual(const FitGrid& g, const Eigen::VectorXd& target, int da, int db) {
  if (da < 0 && db < 0) return target.norm() == 0.0 ? 0.0 : 1.0;
  const Eigen::MatrixXd A = design(g.us, g.J, da, db);
  const LsqFit fit = least_squares(A, target);
  const double nb = target.norm();
  return nb == 0.0 ? 0.0 : (A * fit.coef - target).norm() / nb;
}

// Evaluation matrix of the spanning set; `vanishing` flags columns that cancel to the roundoff
// level of their integrand at every grid point (moments killed by a symmetry of the curves).
struct Spanning {
  Eigen::MatrixXd B;
  std::vector<bool> vanishing;
};

// Orthonormal basis of the column space of the spanning set and its numerical rank. Vanishing
// columns are dropped, rows and columns
// are equilibrated, and singular values below rel_tol of the largest are discarded. The row
// weights applied are returned so that other matrices can be compared in the same metric.
Eigen::MatrixXd range_basis(const Spanning& sp, int& rank, Eigen::VectorXd* row_weights = nullptr,
                            double rel_tol = 1e-8) {
  const Eigen::MatrixXd& B = sp.B;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < B.cols(); ++k)
    if (!sp.vanishing[k]) keep.push_back(k);
  Eigen::MatrixXd Bn(B.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) Bn.col(static_cast<Eigen::Index>(k)) = B.col(keep[k]);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(B.rows());
  for (int sweep = 0; sweep < 5 && Bn.cols() > 0; ++sweep) {
    for (Eigen::Index r = 0; r < Bn.rows(); ++r) {
      const double nr = Bn.row(r).norm();
      if (nr > 0.0) {
        Bn.row(r) /= nr;
        w(r) /= nr;
      }
    }
    for (Eigen::Index k = 0; k < Bn.cols(); ++k) Bn.col(k) /= Bn.col(k).norm();
  }
  if (row_weights) *row_weights = w;
  rank = 0;
  if (Bn.cols() == 0) return Eigen::MatrixXd(B.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Bn, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rel_tol * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}


Spanning spanning_matrix(const HamiltonianCase& c, const std::vector<double>& hs, const std::vector<MomentIndex>& idx,
                         const QuadOptions& opt) {
  Spanning sp;
  sp.B.resize(static_cast<Eigen::Index>(hs.size()), static_cast<Eigen::Index>(idx.size()));
  sp.vanishing.assign(idx.size(), true);
  for (std::size_t r = 0; r < hs.size(); ++r) {
    const auto v = spanning_values(c, hs[r], idx, opt);
    for (std::size_t k = 0; k < v.size(); ++k) {
      sp.B(r, k) = v[k].value;
      if (std::abs(v[k].value) > 1e-9 * v[k].magnitude) sp.vanishing[k] = false;
    }
  }
  return sp;
}

double round15(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return std::stod(os.str());
}

nlohmann::ordered_json poly_json(const std::vector<double>& p) {
  auto a = nlohmann::ordered_json::array();
  for (double v : p) a.push_back(round15(v));
  return a;
}

nlohmann::ordered_json exact_json(const RatPoly& p) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& q : p.coeffs()) a.push_back(to_string(q));
  return a;
}

Laurent& add_scaled(Laurent& acc, const Laurent& x, const Rational& s, int shift = 0) {
  for (const auto& [e, v] : x) {
    Rational& slot = acc[e + shift];
    slot += s * v;
    if (slot == 0) acc.erase(e + shift);
  }
  return acc;
}

}  // namespace

double MomentTable::at(int i, int j) const {
  const auto it = entries.find({i, j});
  if (it == entries.end())
    throw std::out_of_range("moment I_" + std::to_string(i) + "," + std::to_string(j) + " not in the table");
  return it->second;
}

std::optional<int> quartic_nu(const std::string& case_id) {
  if (case_id == "6") return 1;
  if (case_id == "7") return -1;
  return std::nullopt;
}

MomentTable make_moment_table(const HamiltonianCase& c, double h, int max_total, const QuadOptions& opt) {
  MomentTable t;
  t.case_id = c.id;
  t.h = h;
  t.nu = quartic_nu(c.id);
  for (const auto& [key, m] : moment_table(c, h, c.id == "8" ? -1 : 0, max_total, opt)) t.entries[key] = m.value;
  return t;
}

double quartic_symmetry_defect(const MomentTable& t) {
  double top = 0.0, defect = 0.0;
  for (const auto& [key, v] : t.entries) top = std::max(top, std::abs(v));
  for (const auto& [key, v] : t.entries) {
    const auto [i, j] = key;
    if (!is_even(i) || !is_even(j)) defect = std::max(defect, std::abs(v));
    const auto it = t.entries.find({j, i});
    if (it != t.entries.end()) defect = std::max(defect, std::abs(v - it->second));
  }
  return top == 0.0 ? 0.0 : defect / top;
}

std::vector<RelationCheck> recurrence_quartic(const MomentTable& t, int i, int j, int nu) {
  if (i < 0 || j < 0 || !is_even(i) || !is_even(j)) throw std::invalid_argument("indices must be even and >= 0");
  if (nu != 1 && nu != -1) throw std::invalid_argument("nu must be +1 or -1");
  const double h = t.h;
  std::vector<RelationCheck> out;
  if (i != j) {
    const double a = nu * (i - j) * t.at(i + 2, j + 2);
    const double b = (j + 1) * t.at(i + 2, j), c = (i + 1) * t.at(i, j + 2);
    out.push_back(make_check("line1", a, b - c, {a, b, c}));
  }
  {
    const double a = nu * (i + 3) * t.at(i + 2, i + 2);
    const double b = -(2 * i + 4) * t.at(i + 2, i), c = (i + 1) * h * t.at(i, i);
    out.push_back(make_check("line2", a, b + c, {a, b, c}));
  }
  {
    const double a = nu * (i + 5) * t.at(i + 4, 0);
    const double b = (nu * (i + 2) * h - 1.0) * t.at(i + 2, 0), c = -3.0 * t.at(i, 2), d = h * t.at(i, 0);
    out.push_back(make_check("line3", a, b + c + d, {a, b, c, d}));
  }
  return out;
}

Case8Table make_case8_table(double h, int k_max, int area_total, const QuadOptions& opt) {
  const HamiltonianCase c = get_case("8");
  Case8Table t;
  t.h = h;
  const OvalSample s = trace_oval(c, h, opt);
  for (int k = 0; k <= k_max; ++k) t.line.push_back(line_integral(s, OneForm{k - 5, 1, Differential::kDx}, 0).value);
  for (const auto& [key, m] : moment_table(c, h, -1, area_total, opt)) t.area[key] = m.value;
  return t;
}

std::vector<RelationCheck> recurrence_case8(const Case8Table& t, int k, int l) {
  if (t.h == 0.0) throw std::invalid_argument("the line-integral relation degenerates at h = 0");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (l < 0 || !is_even(l)) throw std::invalid_argument("l must be even and >= 0");
  std::vector<RelationCheck> out;
  if (static_cast<std::size_t>(k + 2) >= t.line.size()) throw std::out_of_range("line integral I_k+2 not in the table");
  {
    const double a = (k - 0.5) * t.h * t.line[k + 2];
    const double b = (4.0 - 2.0 * k) * t.line[k + 1], c = (k - 3.5) * t.line[k];
    out.push_back(make_check("line", a, b + c, {a, b, c}));
  }
  for (int kk : {k - 1, k}) {
    auto at = [&](int i, int j) {
      const auto it = t.area.find({i, j});
      if (it == t.area.end()) throw std::out_of_range("area moment not in the table");
      return it->second;
    };
    const double a = at(kk, l + 2);
    const double f = (2.0 * l + 2.0) / (2.0 * kk + 3.0 * l + 3.0);
    const double b = f * at(kk + 2, l), c = f * at(kk + 1, l);
    out.push_back(make_check("area k=" + std::to_string(kk), a, b - c, {a, b, c}));
  }
  return out;
}

int Perturbation::degree() const {
  int d = -1;
  for (const auto* m : {&f, &g})
    for (const auto& [key, v] : *m)
      if (v != 0) d = std::max(d, key.first + key.second);
  return d;
}

std::map<MomentIndex, Rational> divergence_coefficients(const HamiltonianCase& c, const Perturbation& p) {
  const int w = c.weight_power.value_or(0);
  std::map<MomentIndex, Rational> out;
  auto add = [&](int i, int j, const Rational& v) {
    if (v == 0) return;
    Rational& slot = out[{i, j}];
    slot += v;
    if (slot == 0) out.erase({i, j});
  };
  for (const auto& [key, v] : p.f) add(key.first - 1, key.second, -(key.first + w) * v);
  for (const auto& [key, v] : p.g)
    if (key.second > 0) add(key.first, key.second - 1, -key.second * v);
  return out;
}

double perturbation_integral(const HamiltonianCase& c, const Perturbation& p, double h, const QuadOptions& opt) {
  const OvalSample s = trace_oval(c, h, opt);
  const int w = c.weight_power.value_or(0);
  double sum = 0.0;
  for (const auto& [key, v] : p.g) sum += line_integral(s, OneForm{key.first, key.second, Differential::kDx, v}, w).value;
  for (const auto& [key, v] : p.f) sum -= line_integral(s, OneForm{key.first, key.second, Differential::kDy, v}, w).value;
  return sum;
}

std::vector<Rational> case8_line_coefficients(const std::map<MomentIndex, Rational>& area) {
  // I_{k,l} -> combination of I_{k',0}; then I_{k',0} = -I_{k'+1}.
  std::map<MomentIndex, std::map<int, Rational>> memo;
  std::function<const std::map<int, Rational>&(int, int)> expand = [&](int k, int l) -> const std::map<int, Rational>& {
    const auto it = memo.find({k, l});
    if (it != memo.end()) return it->second;
    std::map<int, Rational> r;
    if (l == 0) {
      r[k] = 1;
    } else if (is_even(l)) {
      const int lp = l - 2;
      const Rational f(2 * lp + 2, 2 * k + 3 * lp + 3);
      for (const auto& [kk, v] : expand(k + 2, lp)) r[kk] += f * v;
      for (const auto& [kk, v] : expand(k + 1, lp)) r[kk] -= f * v;
    }
    return memo[{k, l}] = r;
  };
  std::map<int, Rational> line;
  for (const auto& [key, v] : area) {
    if (key.first < -1 || key.second < 0) throw std::invalid_argument("area index outside k >= -1, l >= 0");
    for (const auto& [kk, u] : expand(key.first, key.second)) line[kk + 1] -= v * u;
  }
  int top = 0;
  for (const auto& [k, v] : line)
    if (v != 0) top = std::max(top, k);
  std::vector<Rational> out(static_cast<std::size_t>(top + 1), Rational(0));
  for (const auto& [k, v] : line) out[k] = v;
  return out;
}

std::pair<RatPoly, RatPoly> reduce_quartic_moment(int i, int j, int nu) {
  if (i < 0 || j < 0) throw std::invalid_argument("moment indices must be >= 0");
  if (nu != 1 && nu != -1) throw std::invalid_argument("nu must be +1 or -1");
  if (!is_even(i) || !is_even(j)) return {RatPoly(), RatPoly()};
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::pair<RatPoly, RatPoly>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = memo.find({i, j, nu});
    if (it != memo.end()) return it->second;
  }
  const int p = std::max(i, j), q = std::min(i, j);
  const RatPoly h = RatPoly::monomial(1);
  std::pair<RatPoly, RatPoly> r;
  auto add = [&](const std::pair<RatPoly, RatPoly>& x, const RatPoly& s) {
    r.first += x.first * s;
    r.second += x.second * s;
  };
  if (p == 0) {
    r = {RatPoly::constant(-1), RatPoly()};  // I00 = -J1
  } else if (p == 2 && q == 0) {
    r = {RatPoly(), RatPoly::constant(-1)};  // I20 = -J2
  } else if (q == 0) {
    const Rational d = Rational(1) / (nu * (p + 1));
    add(reduce_quartic_moment(p - 2, 0, nu), RatPoly({Rational(-1), Rational(nu * (p - 2))}) * d);
    add(reduce_quartic_moment(p - 4, 2, nu), RatPoly::constant(-3 * d));
    add(reduce_quartic_moment(p - 4, 0, nu), h * d);
  } else if (p == q) {
    const Rational d = Rational(1) / (nu * (p + 1));
    add(reduce_quartic_moment(p, p - 2, nu), RatPoly::constant(-2 * p * d));
    add(reduce_quartic_moment(p - 2, p - 2, nu), h * ((p - 1) * d));
  } else {
    const Rational d = Rational(1) / (nu * (p - q));
    add(reduce_quartic_moment(p, q - 2, nu), RatPoly::constant((q - 1) * d));
    add(reduce_quartic_moment(p - 2, q, nu), RatPoly::constant(-(p - 1) * d));
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[{i, j, nu}] = r;
  return r;
}

std::pair<Laurent, Laurent> reduce_case8_line(int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  // (J1, J2) = (I_2, I_1)
  std::vector<std::pair<Laurent, Laurent>> I(std::max(k + 1, 3));
  I[0] = {Laurent{{1, Rational(1, 7)}}, Laurent{{0, Rational(8, 7)}}};
  I[1] = {Laurent{}, Laurent{{0, Rational(1)}}};
  I[2] = {Laurent{{0, Rational(1)}}, Laurent{}};
  for (int m = 3; m <= k; ++m) {
    const Rational d = 1 / (Rational(m) - Rational(5, 2));
    const Rational a = (8 - 2 * m) * d, b = (Rational(m) - Rational(11, 2)) * d;
    add_scaled(add_scaled(I[m].first, I[m - 1].first, a, -1), I[m - 2].first, b, -1);
    add_scaled(add_scaled(I[m].second, I[m - 1].second, a, -1), I[m - 2].second, b, -1);
  }
  return I[k];
}

std::vector<double> interior_grid(const HamiltonianCase& c, int m) {
  if (m < 1) throw std::invalid_argument("grid size must be >= 1");
  const auto [lo, hi] = annulus(c);
  const double a = lo + 0.02 * (hi - lo), b = hi - 0.02 * (hi - lo);
  std::vector<double> out;
  for (int k = m - 1; k >= 0; --k)
    out.push_back(0.5 * (a + b) + 0.5 * (b - a) * std::cos((2 * k + 1) * std::numbers::pi / (2 * m)));
  return out;
}

std::optional<std::pair<RatPoly, RatPoly>> exact_reduction(const std::string& case_id, int n,
                                                           const std::map<MomentIndex, Rational>& coef) {
  const auto nu = quartic_nu(case_id);
  if (!nu && case_id != "8") return std::nullopt;
  RatPoly alpha, beta;
  if (nu) {
    for (const auto& [key, v] : coef) {
      if (v == 0) continue;
      const auto [a, b] = reduce_quartic_moment(key.first, key.second, *nu);
      alpha += a * v;
      beta += b * v;
    }
    return std::pair{alpha, beta};
  }
  const int shift = application_space(case_id, n).h_power;
  Laurent la, lb;
  for (const auto& [key, v] : coef) {
    if (v == 0) continue;
    const auto [a, b] = reduce_case8_line(key.first);
    add_scaled(la, a, v, shift);
    add_scaled(lb, b, v, shift);
  }
  auto to_poly = [](const Laurent& l) {
    int top = -1;
    for (const auto& [e, v] : l) {
      if (v == 0) continue;
      if (e < 0) throw std::logic_error("negative power of h survives the case 8 prefactor");
      top = std::max(top, e);
    }
    std::vector<Rational> cs(static_cast<std::size_t>(top + 1), Rational(0));
    for (const auto& [e, v] : l)
      if (e >= 0) cs[static_cast<std::size_t>(e)] = v;
    return RatPoly(cs);
  };
  return std::pair{to_poly(la), to_poly(lb)};
}

std::vector<MomentIndex> spanning_set(const std::string& case_id, int n) { return spanning_indices(get_case(case_id), n); }

Reduction reduce(const std::string& case_id, int n, const std::map<MomentIndex, Rational>& coef,
                 const QuadOptions& opt) {
  const HamiltonianCase c = get_case(case_id);
  const ApplicationSpace space = application_space(case_id, n);
  validate_coefficients(c, n, coef);
  Reduction r;
  r.case_id = case_id;
  r.n = n;
  r.check_points = check_points(c);

  std::map<MomentIndex, Rational> nz;
  for (const auto& [key, v] : coef)
    if (v != 0) nz[key] = v;

  // Direct quadrature of sum c I, with the size of the summed integrands for a roundoff floor.
  auto direct = [&](double h) -> std::pair<double, double> {
    std::vector<MomentIndex> idx;
    for (const auto& [key, v] : nz) idx.push_back(key);
    if (idx.empty()) return {0.0, 0.0};
    const auto vals = spanning_values(c, h, idx, opt);
    double s = 0.0, size = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const double ck = to_double(nz.at(idx[k]));
      s += ck * vals[k].value;
      size += std::abs(ck) * vals[k].magnitude;
    }
    return {s, size};
  };
  auto mismatch = [](std::pair<double, double> d, double red) {
    const double scale = std::max({std::abs(d.first), std::abs(red), 1e-9 * d.second});
    return scale == 0.0 ? 0.0 : std::abs(d.first - red) / scale;
  };

  if (auto ex = exact_reduction(case_id, n, nz)) {
    r.exact = true;
    if (case_id == "8") r.prefactor = -space.h_power;
    const RatPoly& alpha = ex->first;
    const RatPoly& beta = ex->second;
    r.alpha_exact = alpha;
    r.beta_exact = beta;
    r.alpha = to_doubles(alpha);
    r.beta = to_doubles(beta);
    for (double h : r.check_points) {
      const auto J = form_integrals(c, h, opt);
      const double red = std::pow(h, r.prefactor) * (alpha.eval(h) * J[0] + beta.eval(h) * J[1]);
      r.residual = std::max(r.residual, mismatch(direct(h), red));
    }
    return r;
  }

  const int da = space.deg_alpha, db = space.deg_beta;
  const int unknowns = std::max(0, da + 1) + std::max(0, db + 1);
  const FitGrid g = fit_grid(c, std::max(24, 3 * unknowns), opt);
  Eigen::VectorXd target(static_cast<Eigen::Index>(g.hs.size()));
  for (std::size_t k = 0; k < g.hs.size(); ++k) target(k) = direct(g.hs[k]).first;
  const Eigen::MatrixXd A = design(g.us, g.J, da, db);
  const LsqFit fit = least_squares(A, target);
  r.condition = fit.condition;
  if (fit.condition > 1e12) r.diagnosis = "ill-conditioned design: condition " + std::to_string(fit.condition);
  std::vector<double> au(fit.coef.data(), fit.coef.data() + std::max(0, da + 1));
  std::vector<double> bu(fit.coef.data() + std::max(0, da + 1), fit.coef.data() + fit.coef.size());
  const double sa = 2.0 / (g.hi - g.lo), sb = -(g.hi + g.lo) / (g.hi - g.lo);
  r.alpha = affine_to_h(au, sa, sb);
  r.beta = affine_to_h(bu, sa, sb);
  for (double h : r.check_points) {
    const auto J = form_integrals(c, h, opt);
    const double u = g.u_of(h);
    r.residual = std::max(r.residual, mismatch(direct(h), horner(au, u) * J[0] + horner(bu, u) * J[1]));
  }
  if (da >= 0) r.reduced_alpha_residual = fit_residual(g, target, da - 1, db);
  if (db >= 0) r.reduced_beta_residual = fit_residual(g, target, da, db - 1);
  return r;
}

DegreeValidation validate_degrees(const std::string& case_id, int n, const QuadOptions& opt) {
  if (quartic_nu(case_id) || case_id == "8")
    throw std::invalid_argument("degree validation by fitting applies to cases 1-5 and thm5");
  const HamiltonianCase c = get_case(case_id);
  const ApplicationSpace space = application_space(case_id, n);
  DegreeValidation v;
  v.case_id = case_id;
  v.n = n;
  v.deg_alpha = space.deg_alpha;
  v.deg_beta = space.deg_beta;
  const int unknowns = std::max(0, v.deg_alpha + 1) + std::max(0, v.deg_beta + 1);
  const auto idx = spanning_indices(c, n);
  if (idx.empty()) return v;
  const FitGrid g = fit_grid(c, std::max(24, 3 * unknowns), opt);
  v.grid = static_cast<int>(g.hs.size());
  const Spanning sp = spanning_matrix(c, g.hs, idx, opt);

  const Eigen::MatrixXd F = design(g.us, g.J, v.deg_alpha, v.deg_beta);
  v.condition = least_squares(F, Eigen::VectorXd::Zero(F.rows())).condition;
  for (Eigen::Index k = 0; k < sp.B.cols(); ++k)
    if (!sp.vanishing[k])
      v.full_residual = std::max(v.full_residual, fit_residual(g, sp.B.col(k), v.deg_alpha, v.deg_beta));

  Eigen::VectorXd w;
  const Eigen::MatrixXd Q = range_basis(sp, v.rank, &w);
  auto worst = [&](int da, int db) {
    if (da < 0 && db < 0) return 1.0;
    Eigen::MatrixXd Rn = w.asDiagonal() * design(g.us, g.J, da, db);
    for (Eigen::Index k = 0; k < Rn.cols(); ++k) Rn.col(k) /= Rn.col(k).norm();
    const Eigen::MatrixXd P = Rn.householderQr().householderQ() * Eigen::MatrixXd::Identity(Rn.rows(), Rn.cols());
    const Eigen::MatrixXd E = Q - P * (P.transpose() * Q);
    return Eigen::JacobiSVD<Eigen::MatrixXd>(E).singularValues()(0);
  };
  if (v.deg_alpha >= 0) v.reduced_alpha = worst(v.deg_alpha - 1, v.deg_beta);
  if (v.deg_beta >= 0) v.reduced_beta = worst(v.deg_alpha, v.deg_beta - 1);
  return v;
}

int dim_check(const std::string& case_id, int n, const QuadOptions& opt) {
  const HamiltonianCase c = get_case(case_id);
  const ApplicationSpace space = application_space(case_id, n);
  const auto idx = spanning_indices(c, n);
  if (idx.empty()) return 0;
  int m = std::max(24, 3 * (std::max(0, space.deg_alpha + 1) + std::max(0, space.deg_beta + 1)));
  for (int attempt = 0;; ++attempt) {
    int rank = 0;
    range_basis(spanning_matrix(c, interior_grid(c, m), idx, opt), rank);
    if (3 * rank <= m || attempt == 1) return rank;
    m *= 2;
  }
}

nlohmann::ordered_json reduction_to_json(const Reduction& r) {
  nlohmann::ordered_json j;
  j["case"] = r.case_id;
  j["n"] = r.n;
  j["prefactor"] = r.prefactor;
  j["exact"] = r.exact;
  j["alpha"] = poly_json(r.alpha);
  j["beta"] = poly_json(r.beta);
  if (r.alpha_exact) j["alpha_exact"] = exact_json(*r.alpha_exact);
  if (r.beta_exact) j["beta_exact"] = exact_json(*r.beta_exact);
  j["residual"] = round15(r.residual);
  if (r.condition) j["condition"] = round15(*r.condition);
  if (r.reduced_alpha_residual) j["reduced_alpha_residual"] = round15(*r.reduced_alpha_residual);
  if (r.reduced_beta_residual) j["reduced_beta_residual"] = round15(*r.reduced_beta_residual);
  if (!r.diagnosis.empty()) j["diagnosis"] = r.diagnosis;
  return j;
}

nlohmann::ordered_json degree_validation_to_json(const DegreeValidation& v) {
  nlohmann::ordered_json j;
  j["case"] = v.case_id;
  j["n"] = v.n;
  j["deg_alpha"] = v.deg_alpha;
  j["deg_beta"] = v.deg_beta;
  j["rank"] = v.rank;
  j["full_residual"] = round15(v.full_residual);
  j["reduced_alpha"] = v.reduced_alpha ? nlohmann::ordered_json(round15(*v.reduced_alpha)) : nullptr;
  j["reduced_beta"] = v.reduced_beta ? nlohmann::ordered_json(round15(*v.reduced_beta)) : nullptr;
  j["condition"] = round15(v.condition);
  j["grid"] = v.grid;
  return j;
}

}  // namespace fcheb
