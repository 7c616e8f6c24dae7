#include "hyperhs/hyperhs.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace hyperhs;

namespace {

const char* kSampleConfig = R"(# global defaults
seed = 24601
samples = 4000
format = csv
timing = off

[po5]          # deterministic quadrature check
a1 = 1.2
a2 = 0.8
a = 0.4
tolerance = 1e-6

[izmoment]
lambda = 1.0, -1.0, 0.5

[izmoment]     # same identity at a second parameter point
lambda = 2.0, 0.5
)";

int thrown_line(const std::string& text) {
  try {
    suite::parse_suite_config(text);
  } catch (const ConfigError& ex) {
    return ex.line;
  }
  return -1;
}

}  // namespace

TEST(ParseConfig, AcceptsTheDocumentedGrammar) {
  const suite::SuiteConfig cfg = suite::parse_suite_config(kSampleConfig);
  EXPECT_EQ(cfg.seed, 24601u);
  EXPECT_EQ(cfg.samples, 4000);
  EXPECT_EQ(cfg.format, "csv");
  EXPECT_FALSE(cfg.timing);
  ASSERT_EQ(cfg.entries.size(), 3u);
  EXPECT_EQ(cfg.entries[0].id, "po5");
  EXPECT_DOUBLE_EQ(cfg.entries[0].tolerance, 1e-6);
  EXPECT_EQ(cfg.entries[0].params.at("a1"), std::vector<double>{1.2});
  EXPECT_EQ(cfg.entries[1].id, "izmoment");
  EXPECT_EQ(cfg.entries[1].params.at("lambda"),
            (std::vector<double>{1.0, -1.0, 0.5}));
  EXPECT_LT(cfg.entries[1].tolerance, 0.0);
  EXPECT_EQ(cfg.entries[2].params.at("lambda"), (std::vector<double>{2.0, 0.5}));
}

TEST(ParseConfig, ReportsTheOffendingLineNumber) {
  EXPECT_EQ(thrown_line("seed = 1\n[nope]\n"), 2);
  EXPECT_EQ(thrown_line("\n\njust words\n"), 3);
  EXPECT_EQ(thrown_line("mystery = 1\n"), 1);
  EXPECT_EQ(thrown_line("[po5]\nbogus = 1\n"), 2);
  EXPECT_EQ(thrown_line("samples = twelve\n"), 1);
  EXPECT_EQ(thrown_line("samples = 0\n"), 1);
  EXPECT_EQ(thrown_line("format = yaml\n"), 1);
  EXPECT_EQ(thrown_line("[po5]\na1 = \n"), 2);
  EXPECT_EQ(thrown_line("[po5\na1 = 1\n"), 1);
}

TEST(ConfigDigest, IgnoresCommentsWhitespaceAndKeyOrder) {
  const std::string a = "seed = 7\n[po5]\na1 = 1.2\na2 = 0.8\na = 0.4\n";
  const std::string b =
      "# same content, shuffled keys and extra noise\nseed   =   7\n"
      "[ po5 ]\na = 0.4    # trailing comment\na2 = 0.8\na1 = 1.2\n";
  EXPECT_EQ(suite::config_digest(suite::parse_suite_config(a)),
            suite::config_digest(suite::parse_suite_config(b)));
}

TEST(ConfigDigest, TracksEverySemanticChange) {
  const std::string base = "seed = 7\n[po5]\na1 = 1.2\na2 = 0.8\na = 0.4\n";
  const std::string digest =
      suite::config_digest(suite::parse_suite_config(base));
  const char* variants[] = {
      "seed = 8\n[po5]\na1 = 1.2\na2 = 0.8\na = 0.4\n",
      "seed = 7\nsamples = 9999\n[po5]\na1 = 1.2\na2 = 0.8\na = 0.4\n",
      "seed = 7\n[po5]\na1 = 1.3\na2 = 0.8\na = 0.4\n",
      "seed = 7\n[po5]\ntolerance = 1e-5\na1 = 1.2\na2 = 0.8\na = 0.4\n",
      "seed = 7\n[po5]\na1 = 1.2\na2 = 0.8\na = 0.4\n[izmoment]\nlambda = 1\n",
  };
  for (const char* v : variants)
    EXPECT_NE(suite::config_digest(suite::parse_suite_config(v)), digest) << v;
}

TEST(ConfigDigest, SectionOrderIsSemantic) {
  // Reports come out in config order, so reordering sections is a real change.
  const std::string ab = "[po5]\na1 = 1\na2 = 1\na = 0\n[izmoment]\nlambda = 1\n";
  const std::string ba = "[izmoment]\nlambda = 1\n[po5]\na1 = 1\na2 = 1\na = 0\n";
  EXPECT_NE(suite::config_digest(suite::parse_suite_config(ab)),
            suite::config_digest(suite::parse_suite_config(ba)));
}

TEST(RunSuite, OutputIsByteIdenticalAcrossReruns) {
  suite::SuiteConfig cfg = suite::parse_suite_config(kSampleConfig);
  cfg.format = "json";
  const suite::SuiteResult r1 = suite::run_suite(cfg);
  const suite::SuiteResult r2 = suite::run_suite(cfg);
  EXPECT_EQ(suite::emit_report(r1, suite::ReportFormat::json),
            suite::emit_report(r2, suite::ReportFormat::json));
  EXPECT_EQ(suite::emit_report(r1, suite::ReportFormat::csv),
            suite::emit_report(r2, suite::ReportFormat::csv));
  EXPECT_EQ(r1.passed, 3);
  EXPECT_EQ(r1.failed, 0);
  EXPECT_EQ(r1.errored, 0);
}

TEST(RunSuite, JsonRoundTripReconstructsEveryField) {
  const suite::SuiteResult r1 =
      suite::run_suite(suite::parse_suite_config(kSampleConfig));
  const suite::SuiteResult r2 =
      suite::parse_result(suite::emit_report(r1, suite::ReportFormat::json));
  EXPECT_EQ(r1.tool_version, r2.tool_version);
  EXPECT_EQ(r1.config_digest, r2.config_digest);
  EXPECT_EQ(r1.passed, r2.passed);
  EXPECT_EQ(r1.failed, r2.failed);
  EXPECT_EQ(r1.errored, r2.errored);
  ASSERT_EQ(r1.reports.size(), r2.reports.size());
  for (std::size_t i = 0; i < r1.reports.size(); ++i) {
    const report::IdentityReport& a = r1.reports[i];
    const report::IdentityReport& b = r2.reports[i];
    EXPECT_EQ(a.identity_id, b.identity_id);
    EXPECT_EQ(a.params_digest, b.params_digest);
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.rhs, b.rhs);
    EXPECT_EQ(a.const_fit, b.const_fit);
    EXPECT_EQ(a.ratio, b.ratio);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_EQ(a.tolerance, b.tolerance);
    EXPECT_EQ(a.pass, b.pass);
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_EQ(a.runtime_ms, b.runtime_ms);
    EXPECT_EQ(r1.errors[i], r2.errors[i]);
  }
}

TEST(RunSuite, CsvHasOneRowPerReportPlusHeader) {
  const suite::SuiteResult r =
      suite::run_suite(suite::parse_suite_config(kSampleConfig));
  const std::string csv = suite::emit_report(r, suite::ReportFormat::csv);
  const long newlines = std::count(csv.begin(), csv.end(), '\n');
  EXPECT_EQ(newlines, static_cast<long>(r.reports.size()) + 1);
  EXPECT_EQ(csv.rfind("identity_id,", 0), 0u);
}

TEST(RunSuite, EmptyConfigIsCleanAndZero) {
  const suite::SuiteResult r = suite::run_suite(suite::parse_suite_config(""));
  EXPECT_EQ(r.passed, 0);
  EXPECT_EQ(r.failed, 0);
  EXPECT_EQ(r.errored, 0);
  EXPECT_TRUE(r.reports.empty());
  EXPECT_EQ(r.tool_version, suite::kToolVersion);
  const suite::SuiteResult back =
      suite::parse_result(suite::emit_report(r, suite::ReportFormat::json));
  EXPECT_TRUE(back.reports.empty());
}

TEST(RunSuite, EntryThatThrowsKeepsItsRowAndTheRestStillRun) {
  // a = 5 sits outside the po5 convergence region, so the first entry
  // errors out; the second must still produce its own clean report.
  const suite::SuiteConfig cfg = suite::parse_suite_config(
      "[po5]\na1 = 1\na2 = 1\na = 5\n[izmoment]\nlambda = 1, -1\n");
  const suite::SuiteResult r = suite::run_suite(cfg);
  ASSERT_EQ(r.reports.size(), 2u);
  EXPECT_EQ(r.errored, 1);
  EXPECT_EQ(r.passed, 1);
  EXPECT_EQ(r.failed, 0);
  EXPECT_FALSE(r.reports[0].pass);
  EXPECT_FALSE(r.errors[0].empty());
  EXPECT_TRUE(r.errors[1].empty());
  EXPECT_TRUE(r.reports[1].pass);
  const std::string json = suite::emit_report(r, suite::ReportFormat::json);
  EXPECT_NE(json.find("\"error\""), std::string::npos);
}

TEST(RunSuite, PerCheckToleranceOverridesTheDefault) {
  // po5 compares quadrature against an analytic constant, so its ratio
  // always carries a small nonzero residual for the tolerance to bite on.
  const char* text = "[po5]\na1 = 1.2\na2 = 0.8\na = 0.4\ntolerance = 1e-30\n";
  const suite::SuiteResult r = suite::run_suite(suite::parse_suite_config(text));
  ASSERT_EQ(r.reports.size(), 1u);
  EXPECT_DOUBLE_EQ(r.reports[0].tolerance, 1e-30);
  EXPECT_FALSE(r.reports[0].pass);
  EXPECT_EQ(r.failed, 1);
  EXPECT_EQ(r.errored, 0);
}

TEST(RunSuite, WritesTheConfiguredOutputFile) {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "hyperhs_suite_out.json";
  suite::SuiteConfig cfg =
      suite::parse_suite_config("[izmoment]\nlambda = 1, -1\n");
  cfg.output_path = path.string();
  const suite::SuiteResult r = suite::run_suite(cfg);
  std::ifstream in(path, std::ios::binary);
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), suite::emit_report(r, suite::ReportFormat::json));
  in.close();
  fs::remove(path);
}
