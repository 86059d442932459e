#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "isoparam/verify/suites.hpp"

namespace isoparam::verify {

struct Task
{
  std::string suite;
  std::function<std::vector<Record>(std::uint64_t)> run;
};

/// Seed of task i, mixed from the config seed, the suite name and the task index.
inline std::uint64_t task_seed(std::uint64_t seed, const std::string & suite, std::size_t index)
{
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                   static_cast<std::uint32_t>(index)};
  for (char ch : suite) { words.push_back(static_cast<unsigned char>(ch)); }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline json config_json(const SuiteConfig & cfg)
{
  json j;
  j["suite"] = cfg.suite;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["c"] = cfg.c;
  j["tau"] = json::array();
  for (const auto & t : cfg.tau) { j["tau"].push_back(t.to_string()); }
  j["kappa"] = cfg.kappa;
  j["a"] = cfg.a;
  j["kmax"] = cfg.kmax ? json(*cfg.kmax) : json("auto");
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["family"] = cfg.family;
  return j;
}

inline std::vector<Task> build_tasks(const SuiteConfig & cfg)
{
  std::vector<Task> tasks;
  const bool all = cfg.suite == "all";
  auto exact_points = [&] {
    std::vector<SpaceFormParams> pts;
    for (int n : cfg.n) {
      for (int m : cfg.m) {
        for (int c : cfg.c) {
          for (const auto & t : cfg.tau) {
            SpaceFormParams p{n, m, c, t};
            p.validate();
            pts.push_back(p);
          }
        }
      }
    }
    return pts;
  };
  if (all || cfg.suite == "recurrence") {
    for (const auto & p : exact_points()) {
      const int k = cfg.kmax_for(p.n, p.m);
      tasks.push_back({"recurrence", [p, k](std::uint64_t) { return recurrence_checks(p, k); }});
    }
  }
  if (all || cfg.suite == "kac") {
    for (const auto & p : exact_points()) { tasks.push_back({"kac", [p](std::uint64_t) { return kac_checks(p); }}); }
  }
  if (all || cfg.suite == "system") {
    for (const auto & p : exact_points()) { tasks.push_back({"system", [p](std::uint64_t) { return system_checks(p); }}); }
  }
  if (all || cfg.suite == "jacobi") {
    for (const auto & p : exact_points()) {
      const int trials = cfg.trials;
      tasks.push_back({"jacobi", [p, trials](std::uint64_t s) { return jacobi_checks(p, trials, s); }});
    }
  }
  if (all || cfg.suite == "geometry") {
    const int trials = cfg.trials;
    if (cfg.family != "hn") {
      for (int m : cfg.m) {
        for (double k : cfg.kappa) {
          tasks.push_back({"geometry", [m, k, trials](std::uint64_t s) { return geometry_s1_checks(m, k, trials, s); }});
        }
      }
    }
    if (cfg.family != "s1") {
      for (int n : cfg.n) {
        if (n < 2) { continue; }
        for (int m : cfg.m) {
          for (double a : cfg.a) {
            tasks.push_back({"geometry", [n, m, a, trials](std::uint64_t s) { return geometry_hn_checks(n, m, a, trials, s); }});
          }
        }
      }
    }
  }
  return tasks;
}

/// Bounded worker pool over independent tasks; records are assembled in task order.
inline ReportDocument run_suite(const SuiteConfig & cfg)
{
  cfg.validate();
  const auto tasks = build_tasks(cfg);
  std::vector<std::vector<Record>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const std::uint64_t s = task_seed(cfg.seed, tasks[i].suite, i);
      try {
        results[i] = tasks[i].run(s);
      } catch (const std::exception & e) {
        Record r;
        r.suite = tasks[i].suite;
        r.check_id = "task";
        r.params = json{{"task", i}};
        r.status = Status::error;
        r.witness = {{"message", e.what()}};
        results[i] = {r};
      }
    }
  };
  unsigned hw = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  hw = static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(1, tasks.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < hw; ++t) { pool.emplace_back(worker); }
    worker();
  }
  ReportDocument doc;
  doc.timestamp = utc_timestamp();
  doc.config = config_json(cfg);
  for (auto & rs : results) {
    for (auto & r : rs) { doc.records.push_back(std::move(r)); }
  }
  return doc;
}

}  // namespace isoparam::verify
