#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "dplab/error.hpp"
#include "dplab/experiments.hpp"

namespace dplab {
namespace {

const char* kHeat = R"(
[experiment]
kind = solve
[params]
p = 2
q = 2
[coefficient]
name = constant
c = 1
[grid]
x_lo = 0
x_hi = 1
t_lo = 0
t_hi = 0.05
nx = 16
[data]
name = sine
[solve]
nx = 16, 32
)";

std::string error_of(const std::string& text) {
  try {
    plan_from_config(IniDocument::parse(text));
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

std::string csv(const ExperimentResult& r) {
  std::ostringstream os;
  write_csv(os, r.table);
  return os.str();
}

TEST(Ini, ParsesSectionsCommentsAndInlineComments) {
  const auto doc = IniDocument::parse("# top\n[a]\nx = 1 # note\n; other\ny=two words\n");
  EXPECT_EQ(doc.find("a", "x"), "1");
  EXPECT_EQ(doc.find("a", "y"), "two words");
  EXPECT_FALSE(doc.find("a", "z"));
  EXPECT_FALSE(doc.find("b", "x"));
}

TEST(Ini, RejectsMalformedLines) {
  EXPECT_THROW(IniDocument::parse("[a\nx = 1\n"), ConfigError);
  EXPECT_THROW(IniDocument::parse("[a]\njust words\n"), ConfigError);
  EXPECT_THROW(IniDocument::parse("[a]\nx = 1\nx = 2\n"), ConfigError);
  EXPECT_THROW(IniDocument::parse("[a]\n= 1\n"), ConfigError);
}

TEST(Reader, CollectsEveryProblem) {
  const auto doc = IniDocument::parse("[s]\nn = abc\nk = 1.5\nextra = 1\nlist = 1, x\n");
  ConfigReader r(doc);
  r.number("s", "n");
  r.count("s", "k");
  r.number("s", "absent");
  r.numbers("s", "list");
  try {
    r.finish();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("missing keys: s.absent"), std::string::npos) << msg;
    EXPECT_NE(msg.find("s.n is not a number"), std::string::npos) << msg;
    EXPECT_NE(msg.find("s.k is not a nonnegative integer"), std::string::npos) << msg;
    EXPECT_NE(msg.find("unknown key: s.extra"), std::string::npos) << msg;
    EXPECT_NE(msg.find("s.list has a non-numeric entry"), std::string::npos) << msg;
  }
}

TEST(Reader, FallbacksMarkKeysAsKnown) {
  const auto doc = IniDocument::parse("[s]\nflag = true\n");
  ConfigReader r(doc);
  EXPECT_TRUE(r.flag("s", "flag", false));
  EXPECT_DOUBLE_EQ(r.number("s", "x", 2.5), 2.5);
  EXPECT_EQ(r.count("s", "n", 7), 7u);
  EXPECT_NO_THROW(r.finish());
}

TEST(PlanConfig, ValidHeatConfig) {
  const auto plan = plan_from_config(IniDocument::parse(kHeat));
  EXPECT_EQ(plan_kind(plan), "solve");
  const auto& o = std::get<SolveOptions>(plan);
  EXPECT_EQ(o.nx, (std::vector<std::size_t>{16, 32}));
  EXPECT_DOUBLE_EQ(o.problem.grid.t_hi, 0.05);
}

TEST(PlanConfig, ErrorsNameTheProblem) {
  EXPECT_NE(error_of("").find("experiment.kind"), std::string::npos);
  EXPECT_NE(error_of("[experiment]\nkind = teleport\n").find("teleport"), std::string::npos);

  std::string typo = kHeat;
  typo += "speed = 2\n";
  EXPECT_NE(error_of(typo).find("unknown key: solve.speed"), std::string::npos);

  std::string bad = kHeat;
  bad.replace(bad.find("q = 2"), 5, "q = 1.5");
  EXPECT_THROW(plan_from_config(IniDocument::parse(bad)), PreconditionError);
  EXPECT_NE(error_of(bad).find("q >= p"), std::string::npos);
}

TEST(PlanConfig, EveryCatalogKindIsKnown) {
  for (const auto& [kind, description] : experiment_catalog()) {
    const auto msg = error_of("[experiment]\nkind = " + kind + "\n");
    EXPECT_EQ(msg.find("unknown experiment kind"), std::string::npos) << kind << ": " << msg;
    EXPECT_FALSE(description.empty());
  }
}

TEST(Runs, SolveCsvIsDeterministic) {
  const auto plan = plan_from_config(IniDocument::parse(kHeat));
  const auto a = run_plan(plan);
  const auto b = run_plan(plan);
  const auto text = csv(a);
  EXPECT_EQ(text, csv(b));
  EXPECT_EQ(text.rfind("t,x,u\n", 0), 0u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  // 11 output levels of the 33-node finest mesh.
  EXPECT_EQ(a.table.rows.size(), 11u * 33u);
}

TEST(Runs, SeedOverrideChangesRandomizedRuns) {
  CompareOptions o;
  o.trials = 2;
  o.grid = {-1.0, 1.0, 16, -1.0, 0.0, 16};
  const auto a = run_plan(o, 1);
  const auto b = run_plan(o, 1);
  const auto c = run_plan(o, 2);
  EXPECT_EQ(csv(a), csv(b));
  EXPECT_NE(csv(a), csv(c));
}

TEST(Runs, CounterexampleTable) {
  CounterexampleOptions o;
  const auto r = run_counterexample(o);
  EXPECT_EQ(r.table.columns, (std::vector<std::string>{"n", "I_n", "P_n", "slope"}));
  EXPECT_EQ(r.table.rows.size(), o.cells.size());
  EXPECT_TRUE(r.passed());
}

TEST(Runs, ReportListsChecksAndVerdict) {
  CounterexampleOptions o;
  o.slope_rel_tol = 1e-9;
  const auto r = run_counterexample(o);
  EXPECT_FALSE(r.passed());
  std::ostringstream os;
  write_report(os, r);
  EXPECT_NE(os.str().find("FAIL"), std::string::npos);
  EXPECT_NE(os.str().find("overall: FAIL"), std::string::npos);
}

}  // namespace
}  // namespace dplab
