#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "isoparam/verify/run.hpp"

using namespace isoparam;
using namespace isoparam::verify;

namespace {

// Small validator for the subset of JSON Schema used by report.schema.json.
std::string schema_violation(const nlohmann::json & v, const nlohmann::json & s, const std::string & at = "$")
{
  if (s.contains("type")) {
    auto matches = [&](const std::string & t) {
      if (t == "object") { return v.is_object(); }
      if (t == "array") { return v.is_array(); }
      if (t == "string") { return v.is_string(); }
      if (t == "integer") { return v.is_number_integer(); }
      if (t == "number") { return v.is_number(); }
      if (t == "boolean") { return v.is_boolean(); }
      if (t == "null") { return v.is_null(); }
      return false;
    };
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto & t : s["type"]) { ok = ok || matches(t.get<std::string>()); }
    } else {
      ok = matches(s["type"].get<std::string>());
    }
    if (!ok) { return at + ": wrong type"; }
  }
  if (s.contains("enum")) {
    bool found = false;
    for (const auto & e : s["enum"]) { found = found || e == v; }
    if (!found) { return at + ": not in enum"; }
  }
  if (s.contains("pattern") && v.is_string() && !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) {
    return at + ": pattern mismatch";
  }
  if (v.is_object()) {
    for (const auto & r : s.value("required", nlohmann::json::array())) {
      if (!v.contains(r.get<std::string>())) { return at + ": missing " + r.get<std::string>(); }
    }
    const auto props = s.value("properties", nlohmann::json::object());
    for (const auto & [k, sub] : v.items()) {
      if (props.contains(k)) {
        const auto e = schema_violation(sub, props[k], at + "." + k);
        if (!e.empty()) { return e; }
      } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
        return at + ": unexpected key " + k;
      }
    }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto e = schema_violation(v[i], s["items"], at + "[" + std::to_string(i) + "]");
      if (!e.empty()) { return e; }
    }
  }
  return {};
}

nlohmann::json load_schema()
{
  std::ifstream in(REPORT_SCHEMA_PATH);
  return nlohmann::json::parse(in);
}

nlohmann::json plain(const ReportDocument & d) { return nlohmann::json::parse(to_json(d).dump()); }

SuiteConfig parse_text(const std::string & text)
{
  std::istringstream in(text);
  return parse_config_stream(in);
}

}  // namespace

TEST(Config, Examples)
{
  const auto cfg = parse_text("# comment\n\nsuite = kac\ntau=1/2\nn=2,3\nc=-1, 1\nkmax=auto\nseed=42\n");
  EXPECT_EQ(cfg.suite, "kac");
  ASSERT_EQ(cfg.tau.size(), 1u);
  EXPECT_EQ(cfg.tau[0], BigRational(1, 2));
  EXPECT_EQ(cfg.n, (std::vector<int>{2, 3}));
  EXPECT_EQ(cfg.c, (std::vector<int>{-1, 1}));
  EXPECT_FALSE(cfg.kmax);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.kmax_for(3, 2), 11);
}

TEST(Config, ErrorsCarryLineAndKey)
{
  try {
    parse_text("n=2\nc=0\n");
    FAIL();
  } catch (const ConfigError & e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.key(), "c");
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  try {
    parse_text("seed=1\n\nbogus=3\n");
    FAIL();
  } catch (const ConfigError & e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.key(), "bogus");
  }
  try {
    parse_text("tau=1/x\n");
    FAIL();
  } catch (const ConfigError & e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.key(), "tau");
  }
  EXPECT_THROW(parse_text("tau=3/2\n"), ConfigError);
  EXPECT_THROW(parse_text("trials=0\n"), ConfigError);
  EXPECT_THROW(parse_text("n 3\n"), ConfigError);
  EXPECT_THROW(parse_text("suite=everything\n"), ConfigError);
  EXPECT_THROW(parse_config("/nonexistent/verify.cfg"), IoError);
}

TEST(Config, FileThenFlagOverride)
{
  const auto path = std::filesystem::temp_directory_path() / "isoparam_verify_test.cfg";
  {
    std::ofstream out(path);
    out << "suite=recurrence\nn=2\nm=1\nkmax=5\n";
  }
  auto cfg = parse_config(path.string());
  EXPECT_EQ(cfg.kmax, 5);
  apply_setting(cfg, "kmax", "auto");
  apply_setting(cfg, "n", "3");
  EXPECT_FALSE(cfg.kmax);
  EXPECT_EQ(cfg.kmax_for(3, 1), 8);
  std::filesystem::remove(path);
}

TEST(RunSuite, RecurrenceExample)
{
  SuiteConfig cfg;
  cfg.suite = "recurrence";
  cfg.n = {2, 3, 4};
  cfg.m = {1, 2};
  cfg.c = {-1, 1};
  cfg.tau = {BigRational(1, 2)};
  const auto doc = run_suite(cfg);
  EXPECT_EQ(doc.records.size(), 2u * 12);
  EXPECT_EQ(doc.overall(), Status::pass);
  EXPECT_EQ(doc.exit_code(), 0);
  for (const auto & r : doc.records) {
    const int n = r.params["n"], m = r.params["m"];
    EXPECT_EQ(r.params["kmax"].get<int>(), (m + 1) * n + 2);
  }
}

TEST(RunSuite, GeometryExampleHasResiduals)
{
  SuiteConfig cfg;
  cfg.suite = "geometry";
  cfg.family = "hn";
  cfg.n = {3};
  cfg.m = {2};
  cfg.a = {1.0};
  cfg.trials = 50;
  cfg.seed = 7;
  const auto doc = run_suite(cfg);
  EXPECT_EQ(doc.overall(), Status::pass);
  ASSERT_FALSE(doc.records.empty());
  for (const auto & r : doc.records) {
    EXPECT_EQ(r.params["family"], "hn");
    ASSERT_TRUE(r.max_residual);
  }
}

TEST(RunSuite, DeterministicModuloTimestamp)
{
  SuiteConfig cfg;
  cfg.suite = "all";
  cfg.n = {2, 3};
  cfg.m = {1};
  cfg.trials = 3;
  cfg.seed = 99;
  cfg.threads = 1;
  auto a = plain(run_suite(cfg));
  cfg.threads = 3;
  auto b = plain(run_suite(cfg));
  a.erase("timestamp");
  b.erase("timestamp");
  EXPECT_EQ(a.dump(), b.dump());
  cfg.seed = 100;
  auto c = plain(run_suite(cfg));
  c.erase("timestamp");
  EXPECT_NE(a.dump(), c.dump());
}

TEST(Report, SchemaValid)
{
  SuiteConfig cfg;
  cfg.n = {2, 3};
  cfg.m = {1};
  cfg.trials = 2;
  const auto j = plain(run_suite(cfg));
  EXPECT_EQ(schema_violation(j, load_schema()), "");
  auto broken = j;
  broken["records"][0]["status"] = "maybe";
  EXPECT_NE(schema_violation(broken, load_schema()), "");
  broken = j;
  broken.erase("overall");
  EXPECT_NE(schema_violation(broken, load_schema()), "");
}

TEST(Report, OverallAndExitCodes)
{
  ReportDocument d;
  d.records.push_back(run_check("kac", "a", {}, [] { return Outcome{}; }));
  EXPECT_EQ(d.exit_code(), 0);
  d.records.push_back(run_check("kac", "b", {}, []() -> Outcome { throw std::runtime_error("boom"); }));
  EXPECT_EQ(d.records.back().status, Status::error);
  EXPECT_EQ(d.exit_code(), 3);
  d.records.push_back(run_check("kac", "c", {}, []() -> Outcome { throw VerificationError("identity broken"); }));
  EXPECT_EQ(d.records.back().status, Status::fail);
  EXPECT_EQ(d.overall(), Status::fail);
  EXPECT_EQ(d.exit_code(), 1);
  EXPECT_EQ(plain(d)["overall"], "fail");
  std::ostringstream os;
  print_table(d, os);
  EXPECT_NE(os.str().find("3 checks: 1 pass, 1 fail, 1 error"), std::string::npos);
}

TEST(Seeds, DistinctPerTask)
{
  EXPECT_EQ(task_seed(1, "jacobi", 0), task_seed(1, "jacobi", 0));
  EXPECT_NE(task_seed(1, "jacobi", 0), task_seed(1, "jacobi", 1));
  EXPECT_NE(task_seed(1, "jacobi", 0), task_seed(1, "geometry", 0));
  EXPECT_NE(task_seed(1, "jacobi", 0), task_seed(2, "jacobi", 0));
}
