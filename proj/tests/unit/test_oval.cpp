#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "fcheb/oval.hpp"

using namespace fcheb;

TEST(Oval, TracesClosedCurveWithSmallResidual) {
  const auto c = get_case("1");
  const auto s = trace_oval(c, 0.05);
  EXPECT_LT(s.residual, 1e-12);
  EXPECT_EQ(s.points.front(), s.points.back());
  for (std::size_t k = 1; k < s.theta.size(); ++k) EXPECT_GT(s.theta[k], s.theta[k - 1]);
  for (const auto& p : s.points) EXPECT_NEAR(c.H(p[0], p[1]), 0.05, 1e-12);
}

TEST(Oval, WeightedCaseStaysInRightHalfPlane) {
  const auto c = get_case("8");
  const auto s = trace_oval(c, -0.5);
  EXPECT_LT(s.residual, 1e-12);
  for (const auto& p : s.points) EXPECT_GT(p[0], 0.0);
  double xmin = 1e9, xmax = -1e9;
  for (const auto& p : s.points) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
  }
  EXPECT_LT(xmin, 1.0);
  EXPECT_GT(xmax, 1.0);
}

TEST(Oval, RejectsLevelsOutsideAnnulus) {
  EXPECT_THROW(trace_oval(get_case("1"), 0.2), std::domain_error);
  EXPECT_THROW(trace_oval(get_case("1"), -0.01), std::domain_error);
  EXPECT_THROW(trace_oval(get_case("8"), 0.1), std::domain_error);
}

TEST(Oval, VanishingOvalAreaAndPeriod) {
  const auto c = get_case("1");
  const double h = 1e-4;
  const auto s = trace_oval(c, h);
  const double area = std::abs(line_integral(s, OneForm::parse("y dx")).value);
  EXPECT_NEAR(area / h, std::numbers::pi, 0.01 * std::numbers::pi);
  const double period = region_moment_derivative(s, 0, 0).value;
  EXPECT_NEAR(period, std::numbers::pi, 0.01 * std::numbers::pi);
}

TEST(Oval, ExactFormsAndSymmetries) {
  const auto s = trace_oval(get_case("7"), 0.5);
  EXPECT_NEAR(line_integral(s, OneForm::parse("dx")).value, 0.0, 1e-12);
  EXPECT_NEAR(line_integral(s, OneForm::parse("x^3 dx")).value, 0.0, 1e-12);
  EXPECT_NEAR(line_integral(s, OneForm::parse("x*y^2 dx")).value, 0.0, 1e-10);
  EXPECT_EQ(line_integral_derivative(s, OneForm::parse("dx")).value, 0.0);
}

TEST(Oval, SymmetricCasesMomentStructure) {
  for (const char* id : {"6", "7"}) {
    const auto c = get_case(id);
    for (double h : {0.3, 0.8}) {
      const auto t = moment_table(c, h, 0, 12);
      for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j) {
          const double v = t.at({i, j}).value;
          if (i % 2 || j % 2) {
            EXPECT_NEAR(v, 0.0, 1e-12) << id << " " << i << "," << j;
          } else {
            EXPECT_NEAR(v, t.at({j, i}).value, 1e-9);
          }
        }
    }
  }
  const auto t8 = moment_table(get_case("8"), -0.4, -2, 6);
  for (int k = -2; k <= 3; ++k)
    for (int l = 1; l <= 3; l += 2) EXPECT_NEAR(t8.at({k, l}).value, 0.0, 1e-12);
}

TEST(Oval, GreenConsistency) {
  for (const char* id : {"1", "3", "thm5"}) {
    const auto c = get_case(id);
    const double h = 0.5 * (to_double(c.sigma_lo) + c.sigma_hi_or(1.0));
    const auto s = trace_oval(c, h);
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; i + j <= 6; ++j) {
        const double via_dx = -line_integral(s, OneForm{i, j + 1, Differential::kDx}).value / (j + 1);
        const double via_dy = line_integral(s, OneForm{i + 1, j, Differential::kDy}).value / (i + 1);
        EXPECT_NEAR(via_dx, via_dy, 1e-9) << id << " " << i << "," << j;
      }
  }
}

TEST(Oval, GelfandLerayMatchesFiniteDifferences) {
  for (const char* id : {"1", "2", "4", "8", "thm5"}) {
    const auto c = get_case(id);
    const double lo = to_double(c.sigma_lo), hi = c.sigma_hi_or(2.0);
    const double h = lo + 0.4 * (hi - lo);
    const double d = 1e-5;
    const auto dI = abelian_derivatives(c, h);
    const auto Ip = abelian_integrals(c, h + d);
    const auto Im = abelian_integrals(c, h - d);
    for (int k = 0; k < 2; ++k) {
      const double fd = (Ip[k].value - Im[k].value) / (2 * d);
      EXPECT_NEAR(dI[k].value, fd, 1e-5 * std::abs(fd)) << id << " component " << k;
    }
    const auto s = trace_oval(c, h);
    const int wp = c.weight_power.value_or(0);
    const double fd00 =
        (area_moment(c, h + d, 0, 0).value - area_moment(c, h - d, 0, 0).value) / (2 * d);
    EXPECT_NEAR(region_moment_derivative(s, wp, 0).value, fd00, 1e-5 * std::abs(fd00));
  }
}

TEST(Oval, QuarticAreaMatchesOneDimensionalQuadrature) {
  // y^2 + x^2 + x^4 = h: half-width x* solves x^2 + x^4 = h.
  const auto c = get_case("4");
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double h : {0.1, 1.0, 7.5}) {
    const double xs = std::sqrt((-1.0 + std::sqrt(1.0 + 4.0 * h)) / 2.0);
    auto y = [&](double x) { return std::sqrt(std::max(0.0, h - x * x - x * x * x * x)); };
    const double area = ts.integrate([&](double x) { return 2.0 * y(x); }, -xs, xs);
    const double m2 = ts.integrate([&](double x) { return 2.0 * x * x * y(x); }, -xs, xs);
    const auto I = abelian_integrals(c, h);
    EXPECT_NEAR(I[0].value, area, 1e-9 * area);
    EXPECT_NEAR(I[1].value, m2, 1e-9 * m2);
  }
}

TEST(Oval, NormalizedIntegralsArePositiveAndVanishAtCenter) {
  for (const auto& c : all_cases()) {
    const double lo = to_double(c.sigma_lo), hi = c.sigma_hi_or(lo + 2.0);
    const double h0 = to_double(c.system.h0);
    const double mid = std::abs(abelian_integrals(c, 0.5 * (lo + hi))[0].value);
    const double mid2 = std::abs(abelian_integrals(c, 0.5 * (lo + hi))[1].value);
    for (int k = 1; k <= 20; ++k) {
      const double h = lo + (hi - lo) * k / 21.0;
      const auto I = abelian_integrals(c, h);
      EXPECT_GT(I[0].value, 0.0) << c.id << " h=" << h;
      EXPECT_TRUE(std::isfinite(I[1].value));
    }
    const double dist = 1e-3 * std::min(1.0, hi - lo);
    const double near = h0 + (h0 == lo ? dist : -dist);
    const auto I = abelian_integrals(c, near);
    EXPECT_LT(std::abs(I[0].value), 1e-2 * mid) << c.id;
    EXPECT_LT(std::abs(I[1].value), 1e-2 * mid2) << c.id;
  }
}

TEST(Oval, RefinementStability) {
  const auto c = get_case("5");
  const auto s = trace_oval(c, 0.2);
  const auto s2 = sample_oval(c, 0.2, static_cast<int>(2 * s.nodes()));
  for (const char* f : {"y dx", "x^2*y dx", "x^4*y^3 dy"}) {
    const auto a = line_integral(s, OneForm::parse(f));
    const auto b = line_integral(s2, OneForm::parse(f));
    EXPECT_LE(std::abs(a.value - b.value), std::max(a.est_error, 1e-14));
  }
}
