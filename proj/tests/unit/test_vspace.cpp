#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fcheb/vspace.hpp"

using namespace fcheb;

namespace {

Rational q(long long a, long long b = 1) { return Rational(a, b); }

std::vector<Rational> s_grid(const Rational& lambda, const Rational& s_max) {
  std::vector<Rational> out;
  const Rational start = lambda_star(lambda);
  for (Rational s = start; s <= s_max; s += q(1, 12)) out.push_back(s);
  return out;
}

RatPoly random_poly(int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.push_back(Rational(d(rng)));
  if (deg >= 0 && c.back() == 0) c.back() = 1;
  return RatPoly(c);
}

}  // namespace

TEST(DimVs, FormulaExamples) {
  EXPECT_EQ(dim_vs(q(5, 6), q(7, 6), q(2)).dim, 3);
  EXPECT_EQ(dim_vs(q(1, 2), q(3, 2), q(5, 2)).dim, 4);
  EXPECT_EQ(dim_vs(q(1, 2), q(3, 2), q(1, 2)).dim, 0);
  EXPECT_EQ(dim_vs(q(3, 2), q(1, 2), q(1, 2)).dim, 0);
  EXPECT_EQ(dim_vs(q(1, 2), q(3, 2), q(2)).dim, 3);
  EXPECT_FALSE(dim_vs(q(5, 6), q(7, 6), q(2)).polynomial_branch);
}

TEST(DimVs, Rejections) {
  EXPECT_THROW(dim_vs(q(5, 6), q(7, 6), q(1, 2)), std::invalid_argument);
  EXPECT_THROW(dim_vs(q(5, 6), q(5, 6), q(2)), std::invalid_argument);
  const auto p = dim_vs(q(3), q(-1), q(5));
  EXPECT_TRUE(p.polynomial_branch);
  EXPECT_EQ(p.dim, 4);
}

TEST(Growth, LeadingExponents) {
  const RatPoly one = RatPoly::constant(1), zero;
  EXPECT_EQ(growth_exponent(one, zero, q(5, 6)).exponent, q(5, 6));
  EXPECT_FALSE(growth_exponent(one, zero, q(5, 6)).log);
  EXPECT_EQ(growth_exponent(zero, one, q(5, 6)).exponent, q(7, 6));
  const Growth y = growth_exponent(zero, one, q(1, 2));
  EXPECT_EQ(y.exponent, q(3, 2));
  EXPECT_FALSE(y.log);
  const Growth x = growth_exponent(one, zero, q(1, 2));
  EXPECT_EQ(x.exponent, q(1, 2));
  EXPECT_TRUE(x.log);
  EXPECT_FALSE(x.within(q(1, 2)));
  EXPECT_TRUE(x.within(q(3, 4)));
  EXPECT_THROW(growth_exponent(zero, zero, q(5, 6)), std::invalid_argument);
}

TEST(Growth, InvariantUnderOmega) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const RatPoly P = random_poly(2, rng), Q = random_poly(3, rng);
    EXPECT_EQ(growth_exponent(P, Q, q(11, 4), q(1)).exponent, growth_exponent(P, Q, q(11, 4), q(-3)).exponent);
  }
}

TEST(Ladder, DominantCoefficientVanishes) {
  for (const Rational lam : {q(11, 4), q(5, 2), q(-3, 4), q(17, 6)}) {
    for (int m = 1; m <= 4; ++m) {
      const LadderElement z = ladder_element(lam, m);
      EXPECT_EQ(dominant_coefficient(z.P, z.Q, lam), 0) << to_string(lam) << " m=" << m;
      EXPECT_EQ(static_cast<int>(z.alphas.size()), m);
    }
  }
  const LadderElement z1 = ladder_element(q(11, 4), 1, q(2));
  const Rational mu = 2 - q(11, 4);
  EXPECT_EQ(z1.alphas[0], q(11, 4) / (2 * q(2) * (mu - q(11, 4) + 1)));
  EXPECT_THROW(ladder_element(q(11, 4), 0), std::invalid_argument);
}

TEST(Basis, Examples) {
  auto b = basis(q(5, 6), q(2));
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].tag->str(), "x");
  EXPECT_EQ(b[1].tag->str(), "t*x");
  EXPECT_EQ(b[2].tag->str(), "y");

  b = basis(q(1, 2), q(5, 2));
  ASSERT_EQ(b.size(), 4u);

  // s = lambda* with |lambda - mu| < 1: only the subdominant component survives.
  b = basis(q(7, 6), q(5, 6));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].tag->str(), "y");

  EXPECT_TRUE(basis(q(1, 2), q(1, 2)).empty());
}

TEST(Basis, LadderElementsAppearForWideGaps) {
  const auto b = basis(q(11, 4), q(7, 4));
  ASSERT_EQ(b.size(), 3u);
  int ladders = 0;
  for (const auto& e : b) ladders += e.tag->kind == BasisKind::kLadder;
  EXPECT_EQ(ladders, 2);
}

TEST(Basis, MatchesFormulaAndIsIndependent) {
  for (const Rational lam : {q(5, 6), q(3, 4), q(2, 3), q(1, 2), q(3, 2), q(11, 4), q(5, 2), q(-3, 4)}) {
    for (const Rational& s : s_grid(lam, q(4))) {
      const auto b = basis(lam, s);
      const int dim = dim_vs(lam, 2 - lam, s).dim;
      ASSERT_EQ(static_cast<int>(b.size()), dim) << "lambda=" << to_string(lam) << " s=" << to_string(s);
      for (const auto& e : b) EXPECT_TRUE(e.growth.within(s));
      if (dim > 0 && s <= 3) EXPECT_EQ(evaluation_rank(b, dim + 3, 11), dim);
    }
  }
}

TEST(RankOracle, AgreesWithFormulaOnCatalogPairs) {
  for (const auto& c : all_cases()) {
    const Rational lam = c.system.lambda;
    for (const Rational& s : s_grid(lam, q(10)))
      ASSERT_EQ(rank_oracle_dim(lam, s), dim_vs(lam, c.system.mu, s).dim)
          << "case " << c.id << " s=" << to_string(s);
  }
}

TEST(RankOracle, AgreesWithFormulaOffCatalog) {
  for (const Rational lam : {q(3, 2), q(11, 4), q(-3, 4), q(5, 2), q(-1, 2), q(17, 6), q(7, 2)})
    for (const Rational& s : s_grid(lam, q(7)))
      ASSERT_EQ(rank_oracle_dim(lam, s), dim_vs(lam, 2 - lam, s).dim)
          << "lambda=" << to_string(lam) << " s=" << to_string(s);
}

TEST(ApplicationSpace, Examples) {
  auto a = application_space("3", 4);
  EXPECT_EQ(a.deg_alpha, 1);
  EXPECT_EQ(a.deg_beta, 0);
  EXPECT_EQ(a.dim, 3);
  EXPECT_EQ(a.s, q(11, 6));

  a = application_space("6", 7);
  EXPECT_EQ(a.dim, 5);
  EXPECT_EQ(a.dim_vs, 6);
  EXPECT_EQ(a.accuracy, 2);

  a = application_space("8", 2);
  EXPECT_EQ(a.dim, 3);
  EXPECT_EQ(a.accuracy, 1);
  EXPECT_EQ(a.deg_alpha, 1);
  EXPECT_EQ(a.deg_beta, 0);
  EXPECT_EQ(a.domain, "C \\ [0, +inf)");

  EXPECT_EQ(application_space("thm5", 6).dim, 3);
  EXPECT_EQ(application_space("4", 1).domain, "C \\ (-inf, -1/4]");
  EXPECT_THROW(application_space("1", 0), std::invalid_argument);
  EXPECT_THROW(application_space("8", -1), std::invalid_argument);
  EXPECT_THROW(application_space("9", 3), std::invalid_argument);
}

TEST(ApplicationSpace, ClosedFormDimensions) {
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(application_space("1", n).dim, n);
    EXPECT_EQ(application_space("2", n).dim, n);
    EXPECT_EQ(application_space("3", n).dim, (2 * n + 1) / 3);
    EXPECT_EQ(application_space("4", n).dim, 2 * ((n - 1) / 2) + 1);
    EXPECT_EQ(application_space("7", n).dim, (n - 1) / 2 + (n - 1) / 4 + 1);
    EXPECT_EQ(application_space("8", n).dim, n + 1);
    EXPECT_EQ(application_space("thm5", n).dim, n / 2);
  }
  const int acc8[] = {3, 2, 1, 2, 1, 2, 3};
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(application_space("8", n).accuracy, acc8[n]);
}

TEST(ApplicationSpace, DimensionOfVsAgainstIntegralSpace) {
  for (const char* id : {"1", "2", "3", "4", "5"})
    for (int n = 1; n <= 10; ++n) {
      const auto a = application_space(id, n);
      ASSERT_TRUE(a.dim_vs.has_value());
      EXPECT_EQ(*a.dim_vs, a.dim) << "case " << id << " n=" << n;
    }
  for (const char* id : {"6", "7"})
    for (int n = 1; n <= 12; ++n) {
      const auto a = application_space(id, n);
      const int gap = n <= 6 ? 0 : (n - 3) / 4;
      EXPECT_EQ(*a.dim_vs - a.dim, gap) << "case " << id << " n=" << n;
    }
  EXPECT_EQ(application_space("8", 1).dim_vs, 3);
  EXPECT_EQ(application_space("8", 4).dim_vs, 5);
  EXPECT_EQ(application_space("8", 9).dim_vs, 15);
  for (int n = 2; n <= 12; ++n) EXPECT_EQ(application_space("thm5", n).dim_vs, n / 2);
}

TEST(ApplicationSpace, IntegralsLieInVs) {
  std::mt19937_64 rng(2024);
  for (const auto& id : case_ids()) {
    const auto c = get_case(id);
    for (int n = 1; n <= 12; ++n) {
      const auto a = application_space(id, n);
      if (!a.dim_vs) continue;
      for (int trial = 0; trial < 3; ++trial) {
        const RatPoly P = random_poly(a.deg_alpha, rng), Q = random_poly(a.deg_beta, rng);
        if (P.is_zero() && Q.is_zero()) continue;
        EXPECT_TRUE(growth_exponent(P, Q, c.system).within(a.s)) << "case " << id << " n=" << n;
        if (a.first_strict && !P.is_zero()) {
          const Growth g = growth_exponent(P, RatPoly(), c.system);
          EXPECT_TRUE(g.exponent < a.s) << "case " << id << " n=" << n;
        }
      }
    }
  }
}

TEST(ApplicationSpace, GoldenReport) {
  std::ifstream in(std::string(FCHEB_SOURCE_DIR) + "/tests/golden/application_spaces.json");
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), application_spaces_report(12).dump(2) + "\n");
}
