#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "crossing/corpus.hpp"
#include "crossing/error.hpp"
#include "crossing/sweep.hpp"

using namespace crossing;

namespace {

std::vector<std::pair<double, double>> sample(double (*y)(double), int n = 9) {
  std::vector<std::pair<double, double>> pts;
  for (double h : geometric_grid(1e-2, 1e-5, n)) pts.emplace_back(h, y(h));
  return pts;
}

}  // namespace

TEST(FitPowerLaw, RecoversSyntheticLaws) {
  const auto a = fit_power_law(sample([](double h) { return 3.0 * std::sqrt(h); }), false);
  EXPECT_NEAR(a.exponent, 0.5, 1e-6);
  EXPECT_NEAR(a.amplitude, 3.0, 1e-6);
  EXPECT_LT(a.residual, 1e-10);
  const auto b = fit_power_law(sample([](double h) { return 0.7 * std::pow(h, 2.0 / 3.0) * std::log(1.0 / h); }), true);
  EXPECT_NEAR(b.exponent, 2.0 / 3.0, 1e-6);
  EXPECT_NEAR(b.log_coeff, 1.0, 1e-6);
  EXPECT_NEAR(b.amplitude, 0.7, 1e-6);
  const auto pts = sample([](double h) { return 2.0 * h; });
  EXPECT_NEAR(fixed_exponent_amplitude(pts, 1.0), 2.0, 1e-12);
}

TEST(FitPowerLaw, Degenerate) {
  std::vector<std::pair<double, double>> same{{1e-3, 1.0}, {1e-3, 2.0}, {1e-3, 3.0}};
  EXPECT_THROW(fit_power_law(same, false), Error);
  std::vector<std::pair<double, double>> zero{{1e-2, 1.0}, {1e-3, 0.0}, {1e-4, 1.0}};
  EXPECT_THROW(fit_power_law(zero, false), Error);
  EXPECT_THROW(fit_power_law(std::vector<std::pair<double, double>>{{1e-2, 1.0}}, false), Error);
}

TEST(GeometricGrid, Endpoints) {
  const auto g = geometric_grid(1e-2, 1e-4, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-2);
  EXPECT_DOUBLE_EQ(g.back(), 1e-4);
  EXPECT_NEAR(g[2], 1e-3, 1e-15);
}

TEST(RunSweep, RejectsBadGrids) {
  const auto p = corpus::model_monomial(1, 1e-2);
  EXPECT_THROW(run_sweep(p, {1e-2, 1e-3, 1e-4}), Error);
  EXPECT_THROW(run_sweep(p, {1e-2, 5e-3, 2e-3, 1e-3}), Error);
  EXPECT_THROW(run_sweep(p, {1e-4, 1e-3, 1e-2, 1e-1}), Error);
}

TEST(RunSweep, UncoupledModelIsIdentity) {
  auto p = corpus::model_monomial(2, 1e-2);
  p.r1 = p.r2 = Coupling::zero();
  auto rep = run_sweep(p, geometric_grid(1e-2, 1e-4, 4));
  evaluate_verdicts(rep, {});
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_LT(r.extracted.max_abs_diff(TransferMatrix::identity(r.h)), 1e-12);
  }
  EXPECT_TRUE(rep.all_pass());
}

TEST(RunSweep, TransversalModelVerdicts) {
  auto rep = run_sweep(corpus::model_monomial(1, 1e-2), geometric_grid(1e-2, 1e-4, 5));
  EXPECT_EQ(rep.m, 1);
  evaluate_verdicts(rep, {});
  for (const auto& v : rep.verdicts) EXPECT_TRUE(v.pass) << v.name << " " << v.value;
  // loosening every tolerance cannot turn a pass into a failure
  VerdictSpec loose;
  loose.exponent_tol = 0.2;
  loose.prefactor_rel_tol = 0.5;
  loose.angle_tol = 1.0;
  loose.diag_below = 0.5;
  loose.diag_above = 0.5;
  auto rep2 = rep;
  evaluate_verdicts(rep2, loose);
  EXPECT_TRUE(rep2.all_pass());
  VerdictSpec tight;
  tight.exponent_tol = 1e-9;
  evaluate_verdicts(rep2, tight);
  EXPECT_FALSE(rep2.all_pass());
  ASSERT_NE(rep.fit("t21"), nullptr);
  EXPECT_EQ(rep.fit("nope"), nullptr);
}

TEST(RunSweep, JobsAreDeterministic) {
  const auto grid = geometric_grid(1e-2, 1e-4, 5);
  SweepOptions one, three;
  three.jobs = 3;
  const auto a = run_sweep(corpus::model_monomial(2, 1e-2), grid, one);
  const auto b = run_sweep(corpus::model_monomial(2, 1e-2), grid, three);
  std::ostringstream sa, sb;
  write_csv(sa, a);
  write_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(RunSweep, FailedRowsAreRecorded) {
  SweepOptions opt;
  opt.solver = ModelSolver::Neumann;
  auto p = corpus::model_monomial(1, 1e-2);
  p.r1 = p.r2 = Coupling::bump(4.0, 0.5);
  const auto rep = run_sweep(p, {1e-1, 1e-2, 1e-3, 1e-4}, opt);
  EXPECT_EQ(rep.rows.front().status, "NotContractive");
  EXPECT_TRUE(std::isnan(rep.rows.front().extracted(0, 1).real()));
}

TEST(Csv, RoundTripIsBitExact) {
  const auto rep = run_sweep(corpus::model_monomial(1, 1e-2), geometric_grid(1e-2, 1e-4, 4));
  std::ostringstream os;
  write_csv(os, rep);
  EXPECT_EQ(os.str().substr(0, csv_header().size()), csv_header());
  std::istringstream is(os.str());
  const auto rows = read_csv(is);
  ASSERT_EQ(rows.size(), rep.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].h, rep.rows[i].h);
    EXPECT_EQ(rows[i].status, rep.rows[i].status);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        EXPECT_EQ(rows[i].extracted(a, b), rep.rows[i].extracted(a, b));
        EXPECT_EQ(rows[i].predicted(a, b), rep.rows[i].predicted(a, b));
      }
    for (int k = 0; k < 4; ++k) EXPECT_EQ(rows[i].abs_err[k], rep.rows[i].abs_err[k]);
  }
}

TEST(Csv, MalformedInput) {
  std::istringstream bad_header("h,x\n");
  EXPECT_THROW(read_csv(bad_header), Error);
  std::istringstream short_row(csv_header() + "\n1e-2,1,2\n");
  EXPECT_THROW(read_csv(short_row), Error);
}

TEST(SummaryJson, ContainsVerdicts) {
  auto rep = run_sweep(corpus::model_monomial(1, 1e-2), geometric_grid(1e-2, 1e-4, 4));
  evaluate_verdicts(rep, {});
  const auto js = summary_json(rep);
  EXPECT_NE(js.find("\"verdicts\""), std::string::npos);
  EXPECT_NE(js.find("t21.exponent"), std::string::npos);
}
