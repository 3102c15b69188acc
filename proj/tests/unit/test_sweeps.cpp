#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fcheb/acceptance.hpp"
#include "fcheb/catalog.hpp"
#include "fcheb/moments.hpp"
#include "fcheb/report.hpp"
#include "fcheb/sweeps.hpp"

using namespace fcheb;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

VSpaceElement element(const RatPoly& P, const RatPoly& Q, const Rational& lambda) {
  VSpaceElement e;
  e.P = P;
  e.Q = Q;
  e.lambda = lambda;
  e.omega = 1;
  e.s = 2;
  return e;
}

}  // namespace

TEST(Report, CsvQuoting) {
  const auto text = csv_text({"a", "b"}, {{"1", "x,y"}, {"say \"hi\"", "line\nbreak"}});
  EXPECT_EQ(text, "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",\"line\nbreak\"\n");
  EXPECT_THROW(csv_text({"a", "b"}, {{"1"}}), std::invalid_argument);
}

TEST(Report, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1e-300, 50.0, -2.5e17, 1.0 / 3.0}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(50.0), "50");
  EXPECT_EQ(format_double(0.01), "0.01");
}

TEST(Report, WriteAtomicCreatesDirectoriesAndLeavesNoTemporaries) {
  const auto dir = std::filesystem::temp_directory_path() / "fcheb_report_test";
  std::filesystem::remove_all(dir);
  write_atomic(dir / "a" / "b.txt", "first");
  write_atomic(dir / "a" / "b.txt", "second");
  EXPECT_EQ(slurp(dir / "a" / "b.txt"), "second");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir / "a")) ++entries;
  EXPECT_EQ(entries, 1);
  std::filesystem::remove_all(dir);
}

TEST(Report, SvgPlotShape) {
  const auto svg = svg_plot("a < b", "x", "y", {{"s & t", {0, 1, 2}, {1, 0, 1}}}, {1.0});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("a &lt; b"), std::string::npos);
  EXPECT_NE(svg.find("s &amp; t"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_THROW(svg_plot("t", "x", "y", {{"bad", {0, 1}, {0}}}), std::invalid_argument);
}

TEST(SigmaSpan, UnitIntervalAndNegativeHalfLine) {
  const auto s1 = sigma_span(get_case("1"));
  EXPECT_DOUBLE_EQ(s1.a, 0.0);
  EXPECT_DOUBLE_EQ(s1.b, 1.0);
  EXPECT_FALSE(s1.truncated);
  for (const char* id : {"4", "6"}) {
    const auto s = sigma_span(get_case(id));
    EXPECT_DOUBLE_EQ(s.a, -64000.0) << id;
    EXPECT_DOUBLE_EQ(s.b, 0.0) << id;
    EXPECT_TRUE(s.truncated) << id;
  }
  for (const char* id : {"2", "3", "5", "7", "8", "thm5"}) {
    const auto s = sigma_span(get_case(id));
    EXPECT_NEAR(s.a, 0.0, 1e-15) << id;
    EXPECT_NEAR(s.b, 1.0, 1e-15) << id;
  }
}

TEST(CountZerosNegative, NoZerosOfXOnTheNegativeAxis) {
  const auto ic = count_zeros_negative(element(RatPoly::constant(1), RatPoly(), Rational(5, 6)), -1000.0, -1e-9);
  EXPECT_EQ(ic.zeros, 0);
}

TEST(CountZerosNegative, LocatesPlantedZeros) {
  const auto ic = count_zeros_negative(element(RatPoly({6, 5, 1}), RatPoly(), Rational(3, 4)), -1000.0, -1e-9);
  ASSERT_EQ(ic.zeros, 2);
  EXPECT_NEAR(ic.roots[0], -3.0, 1e-9);
  EXPECT_NEAR(ic.roots[1], -2.0, 1e-9);
  EXPECT_THROW(count_zeros_negative(element(RatPoly::constant(1), RatPoly(), Rational(3, 4)), -1.0, 0.0),
               std::invalid_argument);
}

TEST(ContourEscalation, FarZeroEnlargesTheContour) {
  const auto e = element(RatPoly({80, 1}), RatPoly(), Rational(5, 6));
  ContourSpec spec;
  const auto rep = count_zeros_argument(e, spec, 5, true);
  EXPECT_TRUE(rep.stable);
  EXPECT_DOUBLE_EQ(rep.R, 100.0);
  EXPECT_DOUBLE_EQ(rep.r, 5e-3);
  EXPECT_EQ(rep.zero_count, count_zeros_argument(e, spec, 5, false).zero_count + 1);

  spec.escalations = 0;
  const auto fixed = count_zeros_argument(e, spec, 5, true);
  EXPECT_FALSE(fixed.stable);
  EXPECT_DOUBLE_EQ(fixed.R, 50.0);
  spec.escalations = -1;
  EXPECT_THROW(validate(spec), std::invalid_argument);
}

TEST(ExactReduction, OnlyForTheRecurrenceCases) {
  EXPECT_FALSE(exact_reduction("1", 3, {{{0, 0}, Rational(1)}}).has_value());
  EXPECT_TRUE(exact_reduction("6", 3, {}).has_value());
  const auto r = exact_reduction("8", 0, {{{0, 0}, Rational(7)}});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->first.degree(), application_space("8", 0).deg_alpha);
  EXPECT_EQ(r->second.degree(), application_space("8", 0).deg_beta);
  EXPECT_EQ(spanning_set("8", 4).size(), 5u);
  EXPECT_EQ(spanning_set("6", 3).size(), 6u);
  EXPECT_EQ(spanning_set("thm5", 4).size(), 4u);
}

TEST(RunSweep, DeterministicForAFixedSeed) {
  SweepConfig cfg;
  cfg.case_id = "1";
  cfg.n = 3;
  cfg.trials = 4;
  cfg.seed = 7;
  const auto a = count_csv(run_sweep(cfg)), b = count_csv(run_sweep(cfg));
  EXPECT_EQ(a, b);
  cfg.seed = 8;
  std::vector<RatPoly> first, second;
  for (const auto& r : run_sweep(cfg)) first.push_back(r.alpha);
  cfg.seed = 7;
  for (const auto& r : run_sweep(cfg)) second.push_back(r.alpha);
  EXPECT_NE(first, second);
}

TEST(RunSweep, RowsPassAndCarryTheBounds) {
  SweepConfig cfg;
  cfg.case_id = "2";
  cfg.n = 4;
  cfg.trials = 5;
  cfg.seed = 3;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 5u);
  const auto a = application_space("2", 4);
  for (const auto& r : rows) {
    EXPECT_EQ(r.verdict.d_bound, a.dim + a.accuracy - 1);
    EXPECT_EQ(r.verdict.sigma_bound, r.verdict.d_bound - 1);
    EXPECT_TRUE(r.verdict.d_pass);
    ASSERT_TRUE(r.sigma_zeros.has_value());
    EXPECT_LE(*r.sigma_zeros, r.report.zero_count);
    EXPECT_FALSE(r.flagged());
  }
  const auto csv = count_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "case,n,trial,zero_count,bound,pass,R,r,stable");
  const auto sig = sigma_csv(rows);
  EXPECT_EQ(sig.substr(0, sig.find('\n')), "case,n,trial,sigma_zeros,sigma_bound,sigma_pass");
  EXPECT_EQ(std::count(sig.begin(), sig.end(), '\n'), 6);
}

TEST(RunSweep, SamplesTheIntegralSpaceExactlyWhereDegreesUnderdetermineIt) {
  SweepConfig cfg;
  cfg.case_id = "6";
  cfg.n = 9;
  cfg.trials = 3;
  cfg.seed = 11;
  const auto a = application_space("6", 9);
  for (const auto& r : run_sweep(cfg)) {
    EXPECT_LE(r.alpha.degree(), a.deg_alpha);
    EXPECT_LE(r.beta.degree(), a.deg_beta);
    EXPECT_TRUE(r.verdict.d_pass);
    EXPECT_EQ(r.verdict.d_bound, 8);
  }
}

TEST(RunSweep, ExplicitElements) {
  SweepConfig cfg;
  cfg.case_id = "1";
  cfg.n = 3;
  cfg.alpha = RatPoly::constant(1);
  cfg.beta = RatPoly();
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].alpha, RatPoly::constant(1));

  cfg.alpha = RatPoly({1, 2, 3, 4});
  EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
  cfg.raw = true;
  cfg.sigma = false;
  cfg.stability = false;
  EXPECT_EQ(run_sweep(cfg).size(), 1u);

  SweepConfig zero;
  zero.case_id = "thm5";
  zero.n = 1;
  EXPECT_THROW(run_sweep(zero), std::invalid_argument);
  zero.n = 3;
  zero.trials = 0;
  EXPECT_THROW(run_sweep(zero), std::invalid_argument);
}

TEST(Acceptance, ConfigurationFilters) {
  AcceptanceOptions opt;
  EXPECT_EQ(sweep_configurations(opt).size(), 30u);
  opt.cases = {"8"};
  EXPECT_EQ(sweep_configurations(opt).size(), 7u);
  opt.n_range = std::pair{2, 2};
  ASSERT_EQ(sweep_configurations(opt).size(), 1u);
  EXPECT_EQ(sweep_configurations(opt)[0], (std::pair<std::string, int>{"8", 2}));
}

TEST(Acceptance, OptionValidation) {
  AcceptanceOptions opt;
  opt.cases = {"9"};
  EXPECT_THROW(validate(opt), std::invalid_argument);
  opt.cases = {};
  opt.trials = 0;
  EXPECT_THROW(validate(opt), std::invalid_argument);
  opt.trials = 1;
  opt.tol_pf = 0;
  EXPECT_THROW(validate(opt), std::invalid_argument);
  opt.tol_pf = 1e-6;
  opt.n_range = std::pair{5, 4};
  EXPECT_THROW(validate(opt), std::invalid_argument);
  EXPECT_THROW(run_acceptance(AcceptanceOptions{}, {11}), std::invalid_argument);
}

TEST(Acceptance, FastCriteriaAndReport) {
  AcceptanceOptions opt;
  opt.catalog_file = std::filesystem::path(FCHEB_SOURCE_DIR) / "data" / "catalog.json";
  opt.out_dir = std::filesystem::temp_directory_path() / "fcheb_acceptance_test";
  std::filesystem::remove_all(opt.out_dir);
  const auto res = run_acceptance(opt, {1, 8});
  ASSERT_EQ(res.size(), 2u);
  for (const auto& r : res) EXPECT_TRUE(r.pass) << criterion_line(r);
  EXPECT_EQ(res[0].data.size(), 18u);
  EXPECT_EQ(criterion_line(res[1]).rfind("criterion 8  PASS  ", 0), 0u);

  const auto j = nlohmann::json::parse(slurp(opt.out_dir / "acceptance.json"));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["pass"], true);
  EXPECT_TRUE(j["overrides"].empty());
  EXPECT_FALSE(std::filesystem::exists(opt.out_dir / "count.csv"));
  std::filesystem::remove_all(opt.out_dir);

  opt.tol_pf = 1e-3;
  EXPECT_EQ(acceptance_report(opt, res)["overrides"].size(), 1u);
}
