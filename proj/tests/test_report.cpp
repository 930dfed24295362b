#include <gtest/gtest.h>

#include <json.hpp>

#include "roquette/report.hpp"

using namespace roq;

namespace {

VerificationReport sample() {
  VerificationReport r;
  r.suite = "sample";
  GroupReport a;
  a.definition = "cyclic:4";
  a.fingerprint = "4-00ff";
  a.order = 4;
  a.lattice = LatticeStats{3, 3, 0, false};
  a.checks.push_back({"first", Outcome::pass, "fine", {}});
  a.checks.push_back({"second", Outcome::pass, "", {{"subgroup", {0, 2}}, {"g", {1}}}});
  a.timings = {0.5, 1.25, 2.0};
  GroupReport b;
  b.definition = "cyclic:1";
  b.fingerprint = "1-0001";
  b.order = 1;
  r.groups = {a, b};
  r.notes = {"a note"};
  return r;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  auto r = sample();
  auto text = emit_report(r, ReportFormat::json);
  auto back = parse_report_json(text);
  EXPECT_EQ(back, r);
  auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["suite"], "sample");
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_TRUE(j["groups"][1]["lattice"].is_null());
  EXPECT_EQ(j["groups"][0]["lattice"]["subgroups"], 3);
  EXPECT_EQ(j["groups"][0]["checks"][1]["witnesses"][0]["elements"], nlohmann::json::array({0, 2}));
  EXPECT_EQ(j["groups"][0]["timings"]["lattice_ms"], 1.25);
  EXPECT_EQ(j["notes"][0], "a note");
}

TEST(Report, EmptySuitePasses) {
  VerificationReport r;
  r.suite = "empty";
  EXPECT_TRUE(r.overall());
  EXPECT_FALSE(r.any_failed());
  EXPECT_EQ(nlohmann::json::parse(emit_report(r, ReportFormat::json))["overall"], "pass");
}

TEST(Report, FailingCheck) {
  auto r = sample();
  r.groups[1].checks.push_back({"broken", Outcome::fail, "bad", {{"T", {0, 5}}}});
  EXPECT_FALSE(r.overall());
  EXPECT_TRUE(r.any_failed());
  auto text = emit_report(r, ReportFormat::json);
  auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["overall"], "fail");
  EXPECT_EQ(j["groups"][1]["checks"][0]["witnesses"][0]["role"], "T");
  EXPECT_EQ(parse_report_json(text), r);
}

TEST(Report, SkippedIsNotAPass) {
  auto r = sample();
  r.groups[0].checks.push_back({"lattice", Outcome::skipped, "budget", {}});
  EXPECT_FALSE(r.overall());
  EXPECT_FALSE(r.any_failed());
  EXPECT_FALSE(r.groups[0].passed());
  EXPECT_TRUE(r.groups[1].passed());
  EXPECT_EQ(nlohmann::json::parse(emit_report(r, ReportFormat::json))["groups"][0]["checks"][2]["outcome"], "skipped");
}

TEST(Report, OverallMismatchIsRejected) {
  auto j = nlohmann::json(sample());
  j["overall"] = "fail";
  EXPECT_THROW(parse_report_json(j.dump()), Error);
  j["overall"] = "pass";
  j["groups"][0]["checks"][0]["outcome"] = "maybe";
  EXPECT_THROW(parse_report_json(j.dump()), Error);
  EXPECT_ANY_THROW(parse_report_json("{\"suite\": \"x\"}"));
}

TEST(Report, TextFormat) {
  auto r = sample();
  r.groups[1].checks.push_back({"broken", Outcome::fail, "bad", {{"T", {0, 5}}}});
  auto text = emit_report(r, ReportFormat::text);
  EXPECT_EQ(text.rfind("suite sample: FAIL\n", 0), 0u);
  EXPECT_NE(text.find("cyclic:4  (order 4, 4-00ff)"), std::string::npos);
  EXPECT_NE(text.find("lattice: 3 subgroups, 3 classes, 0 trivial-core classes"), std::string::npos);
  EXPECT_NE(text.find("fail    broken: bad"), std::string::npos);
  EXPECT_NE(text.find("T {0,5}"), std::string::npos);
  EXPECT_NE(text.find("note: a note"), std::string::npos);
  EXPECT_NE(text.find("time: build 0.5 ms, lattice 1.2 ms, checks 2.0 ms"), std::string::npos);
}

TEST(Report, OutcomeNames) {
  for (auto o : {Outcome::pass, Outcome::fail, Outcome::skipped}) EXPECT_EQ(outcome_from_string(to_string(o)), o);
  EXPECT_THROW(outcome_from_string("PASS"), Error);
}
