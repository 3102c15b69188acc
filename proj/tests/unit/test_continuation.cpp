#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fcheb/continuation.hpp"

using namespace fcheb;

namespace {

double rel(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
  return std::hypot(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])) / std::hypot(std::abs(b[0]), std::abs(b[1]));
}

RatPoly random_poly(int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1000, 1000);
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.push_back(Rational(d(rng), 1000));
  return RatPoly(c);
}

VSpaceElement random_element(const HamiltonianCase& c, const ApplicationSpace& a, std::mt19937_64& rng) {
  for (;;) {
    const RatPoly P = random_poly(a.deg_alpha, rng), Q = random_poly(a.deg_beta, rng);
    if (!P.is_zero() || !Q.is_zero()) return table_element(c.system, P, Q, a.s);
  }
}

}  // namespace

TEST(Continuation, MatchesQuadratureOnTheRealAxis) {
  const auto c = get_case("1");
  const auto nf = to_normal_form(c.system, NormalForm::k7);
  const auto germ = distinguished_germ(nf.system.lambda, nf.system.omega);
  auto J = [&](double t) {
    const auto I = abelian_integrals(c, to_double(nf.transform.unmap(Rational(t))));
    const Mat2& T = nf.transform.T;
    return std::array<double, 2>{to_double(T(0, 0)) * I[0].value + to_double(T(0, 1)) * I[1].value,
                                 to_double(T(1, 0)) * I[0].value + to_double(T(1, 1)) * I[1].value};
  };
  const auto j3 = J(0.3);
  const auto g3 = germ.eval(0, Complex(0.3, 0.0));
  const double gauge = j3[0] / g3[0].real();
  EXPECT_NEAR(j3[1] / gauge, g3[1].real(), 1e-6 * std::abs(g3[1].real()));

  ComplexPath path;
  path.waypoints = {Complex(0.3, 0.0), Complex(0.8, 0.0)};
  const auto v = continue_solution(germ, path);
  const auto j8 = J(0.8);
  EXPECT_NEAR(v[0].real(), j8[0] / gauge, 1e-5 * std::abs(v[0]));
  EXPECT_NEAR(v[1].real(), j8[1] / gauge, 1e-5 * std::abs(v[1]));
  EXPECT_LT(std::abs(v[0].imag()), 1e-12);
}

TEST(Continuation, TrivialLoopReturnsInitialValues) {
  const auto germ = distinguished_germ(Rational(5, 6));
  ComplexPath loop;
  loop.waypoints = {Complex(-0.4, 0.0), Complex(-2.0, 1.0), Complex(-3.0, 0.0), Complex(-2.0, -1.0), Complex(-0.4, 0.0)};
  EXPECT_LT(rel(continue_solution(germ, loop), germ.eval(0, Complex(-0.4, 0.0))), 1e-8);
}

TEST(Continuation, HomotopicPathsAgree) {
  const auto germ = distinguished_germ(Rational(3, 4));
  const Complex t(-3.0, 2.0);
  ComplexPath other;
  other.waypoints = {Complex(0.0, 0.4), Complex(-1.0, 3.0), Complex(2.0, 4.0), t};
  EXPECT_LT(rel(continue_solution(germ, other), solution_at(germ, t)), 1e-8);
}

TEST(Continuation, ConjugationSymmetry) {
  for (const Rational lam : {Rational(5, 6), Rational(1, 2), Rational(2, 3)}) {
    const auto germ = distinguished_germ(lam);
    for (const Complex t : {Complex(2.0, 0.0), Complex(5.0, 0.0), Complex(0.7, 0.3), Complex(-4.0, 1.0), Complex(30.0, 7.0)}) {
      const auto up = solution_at(germ, t, 1);
      const auto down = solution_at(germ, std::conj(t), -1);
      EXPECT_LT(rel({std::conj(down[0]), std::conj(down[1])}, up), 1e-8) << t;
      ComplexPath lower;
      lower.waypoints = {Complex(0.3, -0.3), Complex(-1.0, -2.0), Complex(t.real(), -t.imag() - 3.0), std::conj(t)};
      lower.side = t.imag() == 0.0 ? -1 : 0;
      const auto other = continue_solution(germ, lower);
      EXPECT_LT(rel({std::conj(other[0]), std::conj(other[1])}, up), 1e-8) << t;
    }
  }
}

TEST(Continuation, CutSidesDiffer) {
  const auto germ = distinguished_germ(Rational(5, 6));
  const auto up = solution_at(germ, 2.0, 1), down = solution_at(germ, 2.0, -1);
  EXPECT_GT(std::abs(up[0].imag()), 1e-6);
  EXPECT_GT(rel(up, down), 1e-6);
}

TEST(Continuation, PathValidation) {
  const auto germ = distinguished_germ(Rational(5, 6));
  ComplexPath crossing;
  crossing.waypoints = {Complex(0.4, 0.0), Complex(2.0, 1.0), Complex(2.0, -1.0)};
  EXPECT_THROW(continue_solution(germ, crossing), std::invalid_argument);
  ComplexPath near_one;
  near_one.waypoints = {Complex(0.4, 0.0), Complex(1.0, 1e-8), Complex(1.0, 1.0)};
  EXPECT_THROW(continue_solution(germ, near_one), std::invalid_argument);
  ComplexPath far_start;
  far_start.waypoints = {Complex(0.9, 0.0), Complex(0.95, 0.0)};
  EXPECT_THROW(continue_solution(germ, far_start), std::invalid_argument);
  EXPECT_THROW(path_to(Complex(3.0, 0.0)), std::invalid_argument);
}

TEST(Continuation, SecondComponentNonzeroOnTheCut) {
  for (const auto& c : all_cases()) {
    const auto nf = to_normal_form(c.system, NormalForm::k7);
    const auto germ = distinguished_germ(nf.system.lambda, nf.system.omega);
    std::vector<double> ts;
    for (int k = 1; k <= 1000; ++k) ts.push_back(std::pow(1000.0, k / 1000.0) + 1e-3);
    double worst = 1e300;
    const auto vals = cut_side_values(germ, ts, 1);
    for (std::size_t k = 0; k < ts.size(); ++k)
      worst = std::min(worst, std::abs(vals[k][1]) / std::pow(ts[k], to_double(nf.system.mu)));
    EXPECT_GT(worst, 1e-6) << "case " << c.id;
  }
}

TEST(Continuation, LimitAtOneIsFiniteAndNonzero) {
  for (const auto& c : all_cases()) {
    const auto nf = to_normal_form(c.system, NormalForm::k7);
    const auto v = approach_one(nf.system.lambda, nf.system.omega);
    ASSERT_EQ(v.size(), 6u);
    EXPECT_GT(std::abs(v.back()), 1e-3) << "case " << c.id;
    EXPECT_LT(std::abs(v.back() - v[v.size() - 2]), 1e-4 * std::abs(v.back())) << "case " << c.id;
  }
}

TEST(Winding, SyntheticPolynomials) {
  std::vector<Complex> circle;
  for (int k = 0; k < 16; ++k) circle.push_back(std::polar(2.0, 2 * std::numbers::pi * k / 16));
  auto f = [](Complex t) { return 3.0 * t * (t - 1.0); };
  EXPECT_EQ(winding_count(f, circle), 2);
  for (auto& p : circle) p *= 0.25;
  double w = 0;
  EXPECT_EQ(winding_count(f, circle, &w), 1);
  EXPECT_NEAR(w, 2 * std::numbers::pi, 1e-9);
}

TEST(ZeroCount, CaseOneDegreeThreeRespectsBound) {
  const auto c = get_case("1");
  const auto a = application_space("1", 3);
  std::mt19937_64 rng(1);
  ContourSpec spec;
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = random_element(c, a, rng);
    const auto rep = count_zeros_argument(e, spec, a.dim + a.accuracy - 1, trial < 10);
    EXPECT_TRUE(rep.pass) << "trial " << trial << " zeros " << rep.zero_count;
    EXPECT_TRUE(rep.stable);
    EXPECT_GE(rep.zero_count, 1);  // the zero at t = 0
    EXPECT_LT(std::abs(rep.total_winding / (2 * std::numbers::pi) - rep.zero_count), 1e-3);
    EXPECT_LT(rep.max_phase_step, std::numbers::pi / 8);
    EXPECT_LE(rep.im_f_sign_changes, std::max(0, e.P.degree()) + 1);
  }
  const auto tr = contour_trace(get_case("1").system.lambda, to_normal_form(c.system, NormalForm::k7).system.omega, spec);
  EXPECT_LT(tr->closure_error, 1e-8);
}

TEST(ZeroCount, KnownCountsForSimpleElements) {
  ContourSpec spec;
  VSpaceElement x{RatPoly::constant(1), RatPoly(), Rational(5, 6), Rational(1), Rational(5, 6), {}, std::nullopt};
  EXPECT_EQ(count_zeros_argument(x, spec, 1).zero_count, 1);
  VSpaceElement tx = x;
  tx.P = RatPoly::monomial(1);
  EXPECT_EQ(count_zeros_argument(tx, spec, 2).zero_count, 2);
  VSpaceElement shifted = x;
  shifted.P = RatPoly({Rational(2), Rational(-1)});  // (2 - t) x vanishes at 0; t = 2 lies on the cut
  EXPECT_EQ(count_zeros_argument(shifted, spec, 2).zero_count, 1);
  shifted.P = RatPoly({Rational(-1, 2), Rational(1)});  // (t - 1/2) x
  EXPECT_EQ(count_zeros_argument(shifted, spec, 2).zero_count, 2);
}

TEST(ZeroCount, RejectsZeroElement) {
  VSpaceElement z{RatPoly(), RatPoly(), Rational(5, 6), Rational(1), Rational(1), {}, std::nullopt};
  EXPECT_THROW(count_zeros_argument(z, ContourSpec{}, 1), std::invalid_argument);
  ContourSpec bad;
  bad.r = 0.7;
  EXPECT_THROW(validate(bad), std::invalid_argument);
}

TEST(IntervalCount, SyntheticPolynomial) {
  const auto r = count_zeros_interval([](double t) { return (t - 0.25) * (t - 0.5); }, 0.0, 1.0);
  EXPECT_EQ(r.zeros, 2);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_NEAR(r.roots[0], 0.25, 1e-12);
  EXPECT_NEAR(r.roots[1], 0.5, 1e-12);
  const auto d = count_zeros_interval([](double t) { return (t - 0.3) * (t - 0.3); }, 0.0, 1.0, 2001);
  EXPECT_EQ(d.zeros, 0);
}

TEST(IntervalCount, SecondComponentHasFixedSignOnAnnulus) {
  const auto c = get_case("1");
  const auto e = table_element(c.system, RatPoly(), RatPoly::constant(1), Rational(7, 6));
  EXPECT_EQ(count_zeros_interval(e, 1e-6, 1 - 1e-6).zeros, 0);
  VSpaceElement y{RatPoly(), RatPoly::constant(1), Rational(5, 6), Rational(1), Rational(7, 6), {}, std::nullopt};
  EXPECT_EQ(count_zeros_interval(y, 1e-6, 1 - 1e-6).zeros, 0);
  EXPECT_THROW(count_zeros_interval(y, 0.5, 1.0), std::invalid_argument);
}

TEST(IntervalCount, RealSolutionMatchesGerm) {
  const auto germ = distinguished_germ(Rational(2, 3));
  const auto v = real_solution(germ, {-3.0, -0.6, -0.2, 0.3, 0.55, 0.9});
  const auto g = germ.eval(0, Complex(-0.2, 0.0));
  EXPECT_DOUBLE_EQ(v[2][0], g[0].real());
  const auto far = solution_at(germ, Complex(-3.0, 0.0));
  EXPECT_NEAR(v[0][0], far[0].real(), 1e-9 * std::abs(far[0]));
  const auto mid = solution_at(germ, Complex(0.55, 0.0));
  EXPECT_NEAR(v[4][1], mid[1].real(), 1e-9 * std::abs(mid[1]));
}

TEST(IntervalCount, CaseEightQuadraticPerturbations) {
  const auto c = get_case("8");
  const auto a = application_space("8", 2);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = random_element(c, a, rng);
    EXPECT_LE(count_zeros_interval(e, 1e-6, 1 - 1e-6).zeros, 2);
  }
}

TEST(CheckBound, DimensionPlusAccuracyBounds) {
  ZeroCountReport rep;
  rep.zero_count = 3;
  auto v = check_bound(rep, application_space("1", 3), 2);
  EXPECT_EQ(v.d_bound, 3);
  EXPECT_EQ(v.sigma_bound, 2);
  EXPECT_TRUE(v.d_pass);
  EXPECT_TRUE(*v.sigma_pass);
  v = check_bound(rep, application_space("6", 7));
  EXPECT_EQ(v.d_bound, 6);
  EXPECT_FALSE(v.sigma_pass.has_value());
  const auto t5 = application_space("thm5", 8);
  EXPECT_EQ(t5.dim, 4);
  EXPECT_EQ(t5.accuracy, 1);
  v = check_bound(rep, t5, 4);
  EXPECT_EQ(v.d_bound, 4);
  EXPECT_FALSE(*v.sigma_pass);
}

TEST(GrowthCheck, ConstantIsStableUnderDoubling) {
  const auto c = get_case("2");
  const auto a = application_space("2", 4);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const auto e = random_element(c, a, rng);
    const auto g = growth_check(e, 50.0);
    EXPECT_GT(g.c_r, 0.0);
    EXPECT_LT(g.c_2r, 2.0 * g.c_r);
  }
}
