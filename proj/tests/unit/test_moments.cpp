#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fcheb/moments.hpp"
#include "fcheb/vspace.hpp"

using namespace fcheb;

namespace {

Rational q(long long a, long long b = 1) { return Rational(a, b); }

std::vector<double> levels(const std::string& id) {
  if (id == "6") return {0.3, 0.8, 1.5, 2.5, 4.0};
  if (id == "7") return {0.1, 0.3, 0.5, 0.7, 0.9};
  return {-0.9, -0.7, -0.5, -0.3, -0.1};
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-20, 20);
  int v = 0;
  while (v == 0) v = d(rng);
  return Rational(v, 7);
}

std::map<MomentIndex, Rational> random_moment_coefficients(const std::string& id, int n, std::mt19937_64& rng) {
  std::map<MomentIndex, Rational> c;
  if (id == "8") {
    for (int k = 0; k <= n; ++k) c[{k, 0}] = random_rational(rng);
    return c;
  }
  for (int i = 0; i <= n - 1; ++i)
    for (int j = 0; i + j <= n - 1; ++j)
      if (id != "thm5" || i % 2 == 1) c[{i, j}] = random_rational(rng);
  return c;
}

Perturbation random_perturbation(int n, std::mt19937_64& rng) {
  Perturbation p;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) {
      p.f[{a, b}] = random_rational(rng);
      p.g[{a, b}] = random_rational(rng);
    }
  return p;
}

}  // namespace

TEST(MomentTable, QuarticSymmetry) {
  for (const char* id : {"6", "7"}) {
    const auto c = get_case(id);
    for (double h : levels(id)) {
      const auto t = make_moment_table(c, h, 8);
      EXPECT_LT(quartic_symmetry_defect(t), 1e-9) << id << " h=" << h;
      EXPECT_EQ(t.nu, quartic_nu(id));
    }
  }
  EXPECT_THROW(make_moment_table(get_case("6"), 0.5, 2).at(3, 0), std::out_of_range);
}

TEST(QuarticRelations, HoldOnQuadratureData) {
  for (const char* id : {"6", "7"}) {
    const auto c = get_case(id);
    const int nu = *quartic_nu(id);
    for (double h : levels(id)) {
      const auto t = make_moment_table(c, h, 16);
      for (int i = 0; i <= 6; i += 2)
        for (int j = 0; j <= 6; j += 2) {
          const auto checks = recurrence_quartic(t, i, j, nu);
          EXPECT_EQ(checks.size(), i == j ? 2u : 3u);
          for (const auto& r : checks) EXPECT_LT(r.residual, 1e-6) << id << " " << r.name << " i=" << i << " j=" << j;
        }
    }
  }
}

TEST(QuarticRelations, LowOrderDisplays) {
  for (const char* id : {"6", "7"}) {
    const int nu = *quartic_nu(id);
    const double h = id == std::string("6") ? 0.3 : 0.5;
    const auto t = make_moment_table(get_case(id), h, 8);
    const double I1 = -t.at(0, 0), I2 = -t.at(2, 0);
    EXPECT_NEAR(t.at(2, 2), 4.0 / 3 * nu * I2 - 1.0 / 3 * nu * h * I1, 1e-9 * std::abs(t.at(2, 2)));
    EXPECT_NEAR(t.at(4, 0), (-0.4 * h + 0.8 * nu) * I2 - 0.2 * nu * h * I1, 1e-9 * std::abs(t.at(4, 0)));
  }
  const auto t = make_moment_table(get_case("6"), 0.3, 8);
  EXPECT_NEAR(2 * t.at(4, 2), t.at(4, 0) - 3 * t.at(2, 2), 1e-6 * std::abs(t.at(4, 0)));
}

TEST(QuarticRelations, Rejections) {
  const auto t = make_moment_table(get_case("6"), 0.5, 4);
  EXPECT_THROW(recurrence_quartic(t, 1, 0, 1), std::invalid_argument);
  EXPECT_THROW(recurrence_quartic(t, 0, 0, 2), std::invalid_argument);
  EXPECT_THROW(recurrence_quartic(t, 4, 4, 1), std::out_of_range);
}

TEST(QuarticReduction, ExactLowOrderForms) {
  for (int nu : {1, -1}) {
    const auto [a22, b22] = reduce_quartic_moment(2, 2, nu);
    EXPECT_EQ(a22, RatPoly({q(0), q(-nu, 3)}));
    EXPECT_EQ(b22, RatPoly::constant(q(4 * nu, 3)));
    const auto [a40, b40] = reduce_quartic_moment(4, 0, nu);
    EXPECT_EQ(a40, RatPoly({q(0), q(-nu, 5)}));
    EXPECT_EQ(b40, RatPoly({q(4 * nu, 5), q(-2, 5)}));
    EXPECT_EQ(reduce_quartic_moment(0, 4, nu), reduce_quartic_moment(4, 0, nu));
    EXPECT_TRUE(reduce_quartic_moment(3, 2, nu).first.is_zero());
  }
}

TEST(QuarticReduction, LeadingTermsOfTheBasis) {
  for (int nu : {1, -1})
    for (int k = 1; k <= 5; ++k) {
      const auto [a, b] = reduce_quartic_moment(2 * k, 2 * k, nu);
      EXPECT_EQ(a.degree(), k);
      EXPECT_LT(b.degree(), k);
      if (k < 2) continue;
      const auto [a0, b0] = reduce_quartic_moment(2 * k, 0, nu);
      EXPECT_EQ(a0.degree(), k - 1);
      EXPECT_EQ(b0.degree(), k - 1);
      EXPECT_EQ(2 * a0.leading(), nu * b0.leading());
    }
}

TEST(QuarticReduction, HoldsAtLargeLevels) {
  const auto c = get_case("6");
  for (double h : {20.0, 60.0}) {
    const auto t = make_moment_table(c, h, 8);
    const double J1 = -t.at(0, 0), J2 = -t.at(2, 0);
    for (const auto& [i, j] : std::vector<MomentIndex>{{4, 0}, {6, 0}, {8, 0}, {2, 2}, {4, 4}, {6, 2}}) {
      const auto [a, b] = reduce_quartic_moment(i, j, 1);
      const double v = a.eval(h) * J1 + b.eval(h) * J2;
      EXPECT_NEAR(v, t.at(i, j), 1e-6 * std::abs(t.at(i, j))) << i << "," << j << " h=" << h;
    }
  }
}

TEST(Case8Relations, HoldOnQuadratureData) {
  for (double h : levels("8")) {
    const auto t = make_case8_table(h, 8, 12);
    for (int k = 0; k <= 6; ++k)
      for (int l : {0, 2})
        for (const auto& r : recurrence_case8(t, k, l)) EXPECT_LT(r.residual, 1e-6) << r.name << " k=" << k << " h=" << h;
  }
}

TEST(Case8Relations, LowOrderInstances) {
  const double h = -0.5;
  const auto t = make_case8_table(h, 3, 4);
  const auto& I = t.line;
  EXPECT_NEAR(-0.5 * h * I[2], 4 * I[1] - 3.5 * I[0], 1e-9 * std::abs(I[0]));
  EXPECT_NEAR(0.5 * h * I[3], 2 * I[2] - 2.5 * I[1], 1e-9 * std::abs(I[1]));
  EXPECT_NEAR(t.area.at({-1, 2}), 2 * (t.area.at({1, 0}) - t.area.at({0, 0})), 1e-9 * std::abs(t.area.at({-1, 2})));
  auto zero = t;
  zero.h = 0.0;
  EXPECT_THROW(recurrence_case8(zero, 0), std::invalid_argument);
  EXPECT_THROW(recurrence_case8(t, -1), std::invalid_argument);
  EXPECT_THROW(recurrence_case8(t, 2), std::out_of_range);
}

TEST(Case8Reduction, LaurentForms) {
  const auto [a0, b0] = reduce_case8_line(0);
  EXPECT_EQ(a0, (Laurent{{1, q(1, 7)}}));
  EXPECT_EQ(b0, (Laurent{{0, q(8, 7)}}));
  const auto [a3, b3] = reduce_case8_line(3);
  EXPECT_EQ(a3, (Laurent{{-1, q(4)}}));
  EXPECT_EQ(b3, (Laurent{{-1, q(-5)}}));
  const auto [a4, b4] = reduce_case8_line(4);
  EXPECT_EQ(a4, (Laurent{{-1, q(-1)}}));
  EXPECT_TRUE(b4.empty());
}

TEST(Reduce, ExactCasesMatchQuadrature) {
  std::mt19937_64 rng(11);
  for (const char* id : {"6", "7", "8"})
    for (int n : {1, 2, 3, 4, 5, 7, 9}) {
      const auto c = random_moment_coefficients(id, n, rng);
      const auto r = reduce(id, n, c);
      const auto a = application_space(id, n);
      EXPECT_TRUE(r.exact);
      EXPECT_LT(r.residual, 1e-6) << "case " << id << " n=" << n;
      EXPECT_EQ(r.alpha_exact->degree(), a.deg_alpha) << "case " << id << " n=" << n;
      EXPECT_EQ(r.beta_exact->degree(), a.deg_beta) << "case " << id << " n=" << n;
      EXPECT_EQ(r.prefactor, -a.h_power);
    }
}

TEST(Reduce, Examples) {
  const auto r = reduce("6", 5, {{{4, 0}, q(1)}});
  EXPECT_EQ(*r.alpha_exact, RatPoly({q(0), q(-1, 5)}));
  EXPECT_EQ(*r.beta_exact, RatPoly({q(4, 5), q(-2, 5)}));

  const auto r8 = reduce("8", 2, {{{0, 0}, q(1)}, {{1, 0}, q(2)}, {{2, 0}, q(-1)}});
  EXPECT_EQ(r8.prefactor, 0);
  EXPECT_EQ(r8.alpha_exact->degree(), 1);
  EXPECT_EQ(r8.beta_exact->degree(), 0);

  const auto z = reduce("1", 4, {});
  EXPECT_EQ(z.residual, 0.0);
  for (double v : z.alpha) EXPECT_EQ(v, 0.0);
  const auto z7 = reduce("7", 4, {{{1, 2}, q(3)}});
  EXPECT_TRUE(z7.alpha_exact->is_zero());
  EXPECT_LT(z7.residual, 1e-6);

  EXPECT_THROW(reduce("1", 3, {{{2, 1}, q(1)}}), std::invalid_argument);
  EXPECT_THROW(reduce("8", 3, {{{4, 0}, q(1)}}), std::invalid_argument);
  EXPECT_THROW(reduce("thm5", 4, {{{2, 0}, q(1)}}), std::invalid_argument);
  EXPECT_THROW(reduce("2", 0, {}), std::invalid_argument);
}

TEST(Reduce, FittedCasesMatchQuadrature) {
  std::mt19937_64 rng(5);
  for (const char* id : {"1", "2", "3", "4", "5", "thm5"})
    for (int n : {3, 6, 9}) {
      const auto r = reduce(id, n, random_moment_coefficients(id, n, rng));
      EXPECT_FALSE(r.exact);
      EXPECT_LT(r.residual, 1e-6) << "case " << id << " n=" << n;
      const auto a = application_space(id, n);
      EXPECT_EQ(static_cast<int>(r.alpha.size()), a.deg_alpha + 1);
      EXPECT_EQ(static_cast<int>(r.beta.size()), std::max(0, a.deg_beta + 1));
      EXPECT_TRUE(r.condition.has_value());
      EXPECT_TRUE(r.diagnosis.empty());
    }
}

TEST(Perturbation, GreenMapMatchesLineIntegral) {
  std::mt19937_64 rng(3);
  for (const char* id : {"1", "3", "6", "8", "thm5"}) {
    const auto c = get_case(id);
    const double lo = to_double(c.sigma_lo), hi = c.sigma_hi_or(lo + 2.0);
    for (int n : {2, 4}) {
      const auto p = random_perturbation(n, rng);
      EXPECT_EQ(p.degree(), n);
      const auto coef = divergence_coefficients(c, p);
      for (const auto& [key, v] : coef) {
        EXPECT_LE(key.first + key.second, n - 1);
        EXPECT_GE(key.first, id == std::string("8") ? -1 : 0);
      }
      const double h = lo + 0.4 * (hi - lo);
      const auto t = make_moment_table(c, h, n);
      double via_moments = 0.0;
      for (const auto& [key, v] : coef) via_moments += to_double(v) * t.at(key.first, key.second);
      const double direct = perturbation_integral(c, p, h);
      EXPECT_NEAR(via_moments, direct, 1e-8 * std::abs(direct)) << "case " << id << " n=" << n;
      if (id != std::string("8")) continue;
      const auto ck = case8_line_coefficients(coef);
      EXPECT_LE(static_cast<int>(ck.size()), n + 1);
      const auto lt = make_case8_table(h, n, 0);
      double via_line = 0.0;
      for (std::size_t k = 0; k < ck.size(); ++k) via_line += to_double(ck[k]) * lt.line[k];
      EXPECT_NEAR(via_line, direct, 1e-8 * std::abs(direct));
    }
  }
}

TEST(DegreeValidation, StatedDegreesAreSharp) {
  for (const auto& [id, n] : std::vector<std::pair<std::string, int>>{{"1", 5}, {"3", 7}, {"4", 6}, {"thm5", 8}}) {
    const auto v = validate_degrees(id, n);
    EXPECT_LT(v.full_residual, 1e-6) << id << " n=" << n;
    EXPECT_EQ(v.rank, application_space(id, n).dim);
    ASSERT_TRUE(v.reduced_alpha && v.reduced_beta);
    EXPECT_GT(*v.reduced_alpha, 1e-3);
    EXPECT_GT(*v.reduced_beta, 1e-3);
  }
  EXPECT_FALSE(validate_degrees("5", 2).reduced_beta.has_value());
  EXPECT_THROW(validate_degrees("6", 5), std::invalid_argument);
}

TEST(DimCheck, Examples) {
  EXPECT_EQ(dim_check("6", 9), 7);
  EXPECT_EQ(dim_check("7", 9), 7);
  EXPECT_EQ(dim_check("1", 4), 4);
  EXPECT_EQ(dim_check("8", 3), 4);
  EXPECT_EQ(dim_check("3", 3), 2);  // the first moment of the triangle vanishes by rotation symmetry
  EXPECT_EQ(dim_check("thm5", 8), 4);
  EXPECT_EQ(dim_check("thm5", 1), 0);
}

TEST(DimCheck, MatchesApplicationSpaces) {
  for (const char* id : {"2", "5", "7", "8"})
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(dim_check(id, n), application_space(id, n).dim) << "case " << id << " n=" << n;
}

TEST(InteriorGrid, StaysInsideTheAnnulus) {
  for (const auto& id : case_ids()) {
    const auto c = get_case(id);
    const auto g = interior_grid(c, 9);
    ASSERT_EQ(g.size(), 9u);
    for (std::size_t k = 0; k < g.size(); ++k) {
      EXPECT_TRUE(c.sigma_contains(g[k]));
      if (k) EXPECT_LT(g[k - 1], g[k]);
    }
  }
  EXPECT_THROW(interior_grid(get_case("1"), 0), std::invalid_argument);
}

TEST(Reports, JsonShapes) {
  const auto r = reduce("6", 5, {{{4, 0}, q(1)}});
  const auto j = reduction_to_json(r);
  EXPECT_EQ(j["case"], "6");
  EXPECT_EQ(j["alpha_exact"][1], "-1/5");
  EXPECT_DOUBLE_EQ(j["beta"][0].get<double>(), 0.8);
  const auto v = degree_validation_to_json(validate_degrees("2", 3));
  EXPECT_EQ(v["rank"], 3);
  EXPECT_TRUE(v["reduced_alpha"].is_number());
}
