#include <gtest/gtest.h>

#include <filesystem>

#include "roquette/roquette.hpp"

using namespace roq;
namespace fs = std::filesystem;

namespace {

VerificationReport without_timings(VerificationReport r) {
  for (auto& g : r.groups) g.timings = {};
  return r;
}

std::vector<std::pair<std::string, Outcome>> outcomes(const VerificationReport& r) {
  std::vector<std::pair<std::string, Outcome>> out;
  for (const auto& g : r.groups)
    for (const auto& c : g.checks) out.emplace_back(g.definition + "/" + c.id, c.outcome);
  return out;
}

}  // namespace

TEST(Suites, Q8S3Passes) {
  auto r = run_suite("q8-s3");
  EXPECT_TRUE(r.overall()) << emit_report(r, ReportFormat::text);
  ASSERT_EQ(r.groups.size(), 1u);
  EXPECT_EQ(r.groups[0].order, 48u);
  ASSERT_TRUE(r.groups[0].lattice);
  EXPECT_EQ(r.groups[0].lattice->subgroups, 55u);
}

TEST(Suites, RoquettePGroupsPasses) {
  auto r = run_suite("roquette-p-groups");
  EXPECT_TRUE(r.overall()) << emit_report(r, ReportFormat::text);
  EXPECT_EQ(r.groups.size(), 9u);
}

TEST(Suites, SmallCohomologyAndCyclicSuitesPass) {
  SuiteOptions opt;
  opt.cohomology_max_n = 60;
  opt.cyclic_n = {8, 9, 12};
  auto c = run_suite("cohomology-tables", opt);
  EXPECT_TRUE(c.overall()) << emit_report(c, ReportFormat::text);
  auto f = run_suite("cyclic-fitting", opt);
  EXPECT_TRUE(f.overall()) << emit_report(f, ReportFormat::text);
  bool excluded_noted = false;
  for (const auto& n : f.notes) excluded_noted = excluded_noted || n.find("12") != std::string::npos;
  EXPECT_TRUE(excluded_noted);
}

TEST(Suites, DeterministicApartFromTimings) {
  SuiteOptions opt;
  opt.cyclic_n = {9, 16};
  auto a = run_suite("cyclic-fitting", opt);
  opt.jobs = 3;
  auto b = run_suite("cyclic-fitting", opt);
  EXPECT_EQ(without_timings(a), without_timings(b));
  EXPECT_EQ(emit_report(without_timings(a), ReportFormat::json), emit_report(without_timings(b), ReportFormat::json));
}

TEST(Suites, CacheDoesNotChangeOutcomes) {
  auto dir = fs::temp_directory_path() / "roquette-suite-cache-test";
  fs::remove_all(dir);
  LatticeCache cache(dir, nullptr);
  SuiteOptions opt;
  opt.cache = &cache;
  opt.cache_min_order = 0;
  auto plain = run_suite("q8-s3");
  auto cold = run_suite("q8-s3", opt);
  auto warm = run_suite("q8-s3", opt);
  EXPECT_FALSE(cold.groups[0].lattice->cached);
  EXPECT_TRUE(warm.groups[0].lattice->cached);
  EXPECT_EQ(outcomes(plain), outcomes(cold));
  EXPECT_EQ(outcomes(plain), outcomes(warm));
  fs::remove_all(dir);
}

TEST(Suites, BudgetSkipsGroups) {
  SuiteOptions opt;
  opt.max_subgroups = 5;
  auto r = run_suite("q8-s3", opt);
  ASSERT_EQ(r.groups[0].checks.size(), 1u);
  EXPECT_EQ(r.groups[0].checks[0].outcome, Outcome::skipped);
  EXPECT_EQ(r.groups[0].checks[0].id, "lattice");
  EXPECT_FALSE(r.groups[0].lattice);
  EXPECT_FALSE(r.overall());
  EXPECT_FALSE(r.any_failed());
}

TEST(Suites, FailingCheckIsReported) {
  SuiteSpec spec{"custom", {}, {}};
  spec.tasks.push_back({"cyclic:6", "t", false, [](GroupContext& c) {
                          c.check("always", true);
                          c.check("never", false, "on purpose", {element_witness("g", 1)});
                        }});
  spec.tasks.push_back({"cyclic:2", "t", false, [](GroupContext&) { throw Error("boom"); }});
  auto r = run_suite(spec);
  EXPECT_TRUE(r.any_failed());
  EXPECT_EQ(r.groups[0].checks[1].witnesses[0].elements, std::vector<std::uint32_t>{1});
  EXPECT_EQ(r.groups[1].checks[0].id, "error");
  EXPECT_EQ(r.groups[1].checks[0].detail, "boom");
  EXPECT_FALSE(r.groups[0].lattice);
}

TEST(Suites, Names) {
  for (const auto& n : suite_names()) EXPECT_EQ(make_suite(n).name, n);
  EXPECT_THROW(make_suite("no-such-suite"), Error);
  EXPECT_THROW(run_suite("no-such-suite"), Error);
}
