#include <gtest/gtest.h>

#include <cmath>

#include "fcheb/picard_fuchs.hpp"

using namespace fcheb;

namespace {

// |I - A I'| / |I| for a germ element evaluated at t in the unit-interval normal form.
double germ_system_residual(const SolutionGerm& g, int k, Complex t) {
  const auto I = g.eval(k, t);
  const auto dI = g.eval_derivative(k, t);
  const double lam = to_double(g.lambda), mu = to_double(g.mu), w = to_double(g.omega);
  const Complex r0 = I[0] - ((2.0 * t - 1.0) / (2 * lam) * dI[0] + w / (2 * lam) * dI[1]);
  const Complex r1 = I[1] - (1.0 / (2 * mu * w) * dI[0] + (2.0 * t - 1.0) / (2 * mu) * dI[1]);
  return std::hypot(std::abs(r0), std::abs(r1)) / std::hypot(std::abs(I[0]), std::abs(I[1]));
}

}  // namespace

TEST(PicardFuchs, FuchsianResidualOnEveryRow) {
  for (const auto& c : all_cases()) {
    EXPECT_LT(residual_fuchsian(c, default_h_grid(c, 20)), 1e-6) << c.id;
  }
}

TEST(PicardFuchs, FuchsianResidualExampleGrids) {
  std::vector<double> g5, g8;
  for (int k = 0; k < 20; ++k) {
    g5.push_back(0.01 + 0.23 * k / 19.0);
    g8.push_back(-0.95 + 0.9 * k / 19.0);
  }
  EXPECT_LT(residual_fuchsian(get_case("5"), g5), 1e-6);
  EXPECT_LT(residual_fuchsian(get_case("8"), g8), 1e-6);
}

TEST(PicardFuchs, HypergeometricResidualOnEveryRow) {
  for (const auto& c : all_cases()) {
    const auto r = residual_hypergeometric(c, default_t_grid(c, 10));
    EXPECT_LT(r.x, 1e-6) << c.id;
    EXPECT_LT(r.y, 1e-6) << c.id;
  }
}

TEST(PicardFuchs, HypergeometricOperatorOnPolynomials) {
  EXPECT_TRUE(hypergeometric_operator(RatPoly({0, -1, 1}), 2).is_zero());
  EXPECT_FALSE(hypergeometric_operator(RatPoly({0, -1, 1}), 3).is_zero());
  EXPECT_THROW(residual_hypergeometric(get_case("1"), {0.0}), std::invalid_argument);
}

TEST(PicardFuchs, GermAtInfinityConstants) {
  const auto g = local_germ(form7_system(Rational(5, 6)), GermBase::kInfinity);
  ASSERT_TRUE(g.alpha.has_value());
  EXPECT_EQ(*g.alpha, Rational(5, 16));
  ASSERT_TRUE(g.beta.has_value());
  // beta = mu omega / (2 (lambda - mu + 1)) = (7/6) / (2 * 2/3)
  EXPECT_EQ(*g.beta, Rational(7, 8));
  EXPECT_FALSE(g.gamma.has_value());
  EXPECT_EQ(g.frame[0].x[1], Rational(-5, 12));  // -lambda/2
  for (Complex t : {Complex(40, 0), Complex(-30, 25), Complex(5, -60)})
    for (int k = 0; k < 2; ++k) EXPECT_LT(germ_system_residual(g, k, t), 1e-12);
}

TEST(PicardFuchs, ResonantGermAtInfinity) {
  for (const Rational w : {Rational(1), Rational(-3), Rational(2, 5)}) {
    const auto g = local_germ(form7_system(Rational(3, 2), w), GermBase::kInfinity);
    ASSERT_TRUE(g.gamma.has_value());
    EXPECT_EQ(*g.gamma, Rational(-3, 4) / w);
    EXPECT_GT(std::abs(to_double(*g.gamma)), 1e-12);
    EXPECT_EQ(g.frame[0].x[0], 1);
    EXPECT_EQ(g.frame[0].x[1], Rational(-3, 4));
    EXPECT_EQ(g.frame[0].x[2], Rational(-9, 64));
    EXPECT_EQ(g.frame[0].y[2], Rational(3, 8) / w);
    EXPECT_FALSE(g.alpha.has_value());
    for (Complex t : {Complex(40, 0), Complex(-30, 25)})
      for (int k = 0; k < 2; ++k) EXPECT_LT(germ_system_residual(g, k, t), 1e-12);
  }
  const auto g = local_germ(form7_system(Rational(1, 2)), GermBase::kInfinity);
  ASSERT_TRUE(g.gamma.has_value());
  EXPECT_EQ(g.frame[1].log_partner, 0);
  EXPECT_LT(germ_system_residual(g, 1, Complex(-20, 30)), 1e-12);
}

TEST(PicardFuchs, FiniteGermsSolveTheSystem) {
  for (const Rational lam : {Rational(5, 6), Rational(3, 4), Rational(1, 2), Rational(3), Rational(-7, 3)}) {
    const auto sys = form7_system(lam, Rational(-3));
    const auto g0 = local_germ(sys, GermBase::kZero, 60);
    const auto g1 = local_germ(sys, GermBase::kOne, 60);
    EXPECT_EQ(g0.frame[0].x[0], 0);
    EXPECT_EQ(g0.frame[0].y[0], 0);
    EXPECT_EQ(g0.frame[0].x[1], 1);
    for (int k = 0; k < 2; ++k) {
      EXPECT_LT(germ_system_residual(g0, k, Complex(0.3, 0.0)), 1e-10);
      EXPECT_LT(germ_system_residual(g0, k, Complex(-0.2, 0.25)), 1e-10);
      EXPECT_LT(germ_system_residual(g1, k, Complex(1.3, 0.0)), 1e-10);
      EXPECT_LT(germ_system_residual(g1, k, Complex(0.8, -0.2)), 1e-10);
    }
  }
}

TEST(PicardFuchs, GermSeriesResidualOrder) {
  const int trunc = 20;
  for (const Rational lam : {Rational(5, 6), Rational(2, 3)}) {
    const auto g = local_germ(form7_system(lam), GermBase::kZero, trunc);
    const RatPoly x(g.frame[0].x);
    const RatPoly r = hypergeometric_operator(x, lam);
    for (int k = 0; k < trunc - 1; ++k) EXPECT_EQ(r.coeff(k), 0) << k;
  }
}

TEST(PicardFuchs, GermMatchesQuadratureAfterNormalization) {
  for (const char* id : {"1", "3", "4", "thm5"}) {
    const auto c = get_case(id);
    const auto nf = to_normal_form(c.system, NormalForm::k7);
    const auto g = local_germ(nf.system, GermBase::kZero, 40);
    const double t = id == std::string("4") ? -0.1 : 0.1;
    const double h = to_double(nf.transform.unmap(Rational(t)));
    const auto I = abelian_integrals(c, h);
    const Mat2& T = nf.transform.T;
    const double J0 = to_double(T(0, 0)) * I[0].value + to_double(T(0, 1)) * I[1].value;
    const double J1 = to_double(T(1, 0)) * I[0].value + to_double(T(1, 1)) * I[1].value;
    const auto G = g.eval(0, Complex(t, 0));
    const double scale = J0 / G[0].real();
    EXPECT_NEAR(J1, scale * G[1].real(), 1e-5 * std::abs(J1)) << id;
  }
}

TEST(PicardFuchs, GegenbauerPolynomials) {
  EXPECT_EQ(gegenbauer_solution(2), RatPoly({0, -1, 1}));
  EXPECT_EQ(gegenbauer_solution(3), RatPoly({0, Rational(1, 2), Rational(-3, 2), 1}));
  EXPECT_EQ(gegenbauer_solution(-1).degree(), 2);
  EXPECT_EQ(gegenbauer_solution(-2).degree(), 3);
  for (int lam : {-2, -1, 2, 3, 4}) {
    const auto p = gegenbauer_solution(lam);
    EXPECT_TRUE(hypergeometric_operator(p, lam).is_zero());
    EXPECT_TRUE(all_roots_in_unit_interval(p)) << lam;
  }
  EXPECT_THROW(gegenbauer_solution(0), std::invalid_argument);
  EXPECT_THROW(gegenbauer_solution(1), std::invalid_argument);
  EXPECT_FALSE(all_roots_in_unit_interval(RatPoly({-2, 1})));
}

TEST(PicardFuchs, IntegerLambdaGermIsGegenbauer) {
  for (int lam : {3, 4, -2}) {
    const auto g = local_germ(form7_system(lam), GermBase::kZero, 12);
    const RatPoly x(g.frame[0].x);
    EXPECT_EQ(x.monic(), gegenbauer_solution(lam));
  }
}

TEST(PicardFuchs, RiccatiTrajectoryStaysInsideHyperbola) {
  const auto r = riccati_trace(Rational(5, 6), -10.0);
  EXPECT_FALSE(r.blew_up);
  EXPECT_TRUE(r.inside_hyperbola);
  EXPECT_TRUE(r.w_sign_constant);
  EXPECT_TRUE(r.xprime_sign_constant);
  EXPECT_NEAR(r.t_reached, -10.0, 1e-12);
  ASSERT_FALSE(r.samples.empty());
  EXPECT_NEAR(r.samples.front()[1], 0.0, 1e-2);  // w(0) = 0
  for (const Rational lam : {Rational(1, 3), Rational(3, 4), Rational(5, 4), Rational(7, 6), Rational(-5, 2)}) {
    const auto q = riccati_trace(lam, -1000.0);
    EXPECT_TRUE(q.x_nonzero && q.inside_hyperbola && q.w_sign_constant && !q.blew_up) << to_string(lam);
    EXPECT_LT(q.lambda_used, 1);
  }
  EXPECT_THROW(riccati_trace(Rational(2), -1.0), std::invalid_argument);
}
