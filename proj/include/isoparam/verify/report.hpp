#pragma once

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoparam/error.hpp"

namespace isoparam::verify {

inline constexpr const char * toolkit_version = "1.0.0";

enum class Status { pass, fail, error };

inline const char * to_string(Status s) { return s == Status::pass ? "pass" : s == Status::fail ? "fail" : "error"; }

struct Record
{
  std::string suite;
  std::string check_id;
  nlohmann::ordered_json params;
  Status status = Status::pass;
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
  std::optional<double> max_residual;
};

struct ReportDocument
{
  std::string version = toolkit_version;
  std::string timestamp;
  nlohmann::ordered_json config;
  std::vector<Record> records;

  Status overall() const
  {
    Status s = Status::pass;
    for (const auto & r : records) {
      if (r.status == Status::fail) { return Status::fail; }
      if (r.status == Status::error) { s = Status::error; }
    }
    return s;
  }
  std::size_t count(Status s) const
  {
    std::size_t k = 0;
    for (const auto & r : records) { k += r.status == s; }
    return k;
  }
  /// 0 pass, 1 check failure, 3 internal error.
  int exit_code() const
  {
    const Status s = overall();
    return s == Status::pass ? 0 : s == Status::fail ? 1 : 3;
  }
};

inline std::string utc_timestamp()
{
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::ordered_json to_json(const Record & r)
{
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["check_id"] = r.check_id;
  j["params"] = r.params;
  j["status"] = to_string(r.status);
  j["witness"] = r.witness;
  j["max_residual"] = r.max_residual ? nlohmann::ordered_json(*r.max_residual) : nlohmann::ordered_json(nullptr);
  return j;
}

inline nlohmann::ordered_json to_json(const ReportDocument & doc)
{
  nlohmann::ordered_json j;
  j["version"] = doc.version;
  j["timestamp"] = doc.timestamp;
  j["config"] = doc.config;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto & r : doc.records) { j["records"].push_back(to_json(r)); }
  j["overall"] = doc.overall() == Status::pass ? "pass" : "fail";
  j["summary"] = {{"pass", doc.count(Status::pass)}, {"fail", doc.count(Status::fail)}, {"error", doc.count(Status::error)}};
  return j;
}

inline void write_report(const ReportDocument & doc, const std::string & path)
{
  std::ofstream out(path);
  if (!out) { throw IoError("cannot write report to '" + path + "'"); }
  out << to_json(doc).dump(2) << '\n';
  if (!out) { throw IoError("failed writing report to '" + path + "'"); }
}

/// "n=3 m=2 c=-1 tau=1/2" from a flat params object.
inline std::string params_label(const nlohmann::ordered_json & p)
{
  std::string s;
  for (const auto & [k, v] : p.items()) {
    if (!s.empty()) { s += ' '; }
    s += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return s;
}

inline void print_table(const ReportDocument & doc, std::ostream & os)
{
  auto row = [&](const std::string & a, const std::string & b, const std::string & c, const std::string & d, const std::string & e) {
    os << std::left << std::setw(11) << a << ' ' << std::setw(20) << b << ' ' << std::setw(40) << c << ' ' << std::setw(6) << d << ' ' << e << '\n';
  };
  row("suite", "check", "params", "status", "max_residual");
  os << std::string(92, '-') << '\n';
  for (const auto & r : doc.records) {
    std::string res = "-";
    if (r.max_residual) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3e", *r.max_residual);
      res = buf;
    }
    row(r.suite, r.check_id, params_label(r.params), to_string(r.status), res);
  }
  os << std::string(92, '-') << '\n';
  os << doc.records.size() << " checks: " << doc.count(Status::pass) << " pass, " << doc.count(Status::fail) << " fail, "
     << doc.count(Status::error) << " error; overall " << (doc.overall() == Status::pass ? "pass" : "fail") << '\n';
}

}  // namespace isoparam::verify
