// fluordimer: spectra, generator eigenvalue maps and steady-state scans for
// a driven pair of four-level atoms coupled through the vacuum.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluordimer/scan.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Resonance fluorescence of two dipole-dipole coupled four-level atoms"};
  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "run configuration file")
      ->required();
  app.add_option("--set", overrides,
                 "override a config entry, e.g. --set omega=6 (repeatable)");
  app.add_option("--out", out_path, "output CSV path (overrides 'out')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    fluordimer::RunConfig config =
        fluordimer::parse_config_file(config_path, overrides);
    if (!out_path.empty()) config.out = out_path;
    if (config.out.empty())
      throw fluordimer::ConfigError(
          "no output path: pass --out or set 'out' in the config");
    const fluordimer::ScanResult result = fluordimer::run_scan(config);
    fluordimer::write_csv(result, config.out);
    std::fprintf(stderr, "wrote %zu rows x %zu columns to %s\n",
                 result.rows.size(), result.columns.size(),
                 config.out.c_str());
  } catch (const fluordimer::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
  return 0;
}
