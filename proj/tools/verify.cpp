#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "isoparam/verify/run.hpp"

using namespace isoparam;

int main(int argc, char ** argv)
{
  CLI::App app{"Exact and numeric verification suites for isoparametric hypersurfaces in space-form products"};
  std::string suite;
  std::string config_path;
  std::map<std::string, std::string> flags;
  app.add_option("suite", suite, "recurrence | kac | system | jacobi | geometry | all")->required();
  app.add_option("--config", config_path, "key=value configuration file; flags override its values");
  const std::vector<std::pair<std::string, std::string>> opts{
      {"n", "space-form dimensions, comma separated"},
      {"m", "Euclidean dimensions, comma separated"},
      {"c", "curvature signs (-1 or 1)"},
      {"tau", "rationals p/q in (0,1)"},
      {"kappa", "ExampleS1 slopes"},
      {"a", "ExampleHn rates"},
      {"kmax", "highest level, or auto for (m+1)n+2"},
      {"seed", "64-bit seed"},
      {"trials", "random samples per parameter point"},
      {"family", "geometry family: s1 | hn | all"},
      {"out", "JSON report path"},
      {"threads", "worker threads (0 = hardware)"},
  };
  for (const auto & [key, help] : opts) { app.add_option("--" + key, flags[key], help); }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  verify::SuiteConfig cfg;
  try {
    if (!config_path.empty()) { cfg = verify::parse_config(config_path); }
    verify::apply_setting(cfg, "suite", suite);
    for (const auto & [key, help] : opts) {
      if (app.count("--" + key)) { verify::apply_setting(cfg, key, flags[key]); }
    }
    cfg.validate();
  } catch (const ConfigError & e) {
    std::cerr << "config error" << (e.key().empty() ? "" : " [" + e.key() + "]") << ": " << e.what() << '\n';
    return 2;
  } catch (const IoError & e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  }

  try {
    const auto doc = verify::run_suite(cfg);
    verify::print_table(doc, std::cout);
    if (!cfg.out.empty()) { verify::write_report(doc, cfg.out); }
    return doc.exit_code();
  } catch (const ConfigError & e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError & e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
