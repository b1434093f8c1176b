// Parameter scans and the key-value run configuration used by the CLI.
//
// Config files hold one `key = value` assignment per line, `#` starts a
// comment; unknown keys and malformed values are reported with their line
// number.  `--set key=value` overrides are applied after the file.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fluordimer/spectrum.hpp"

namespace fluordimer {

enum class ScanMode {
  spectrum,                 // S(w) on a frequency grid
  eigenvalues_vs_rabi,      // generator spectrum swept over the drive
  eigenvalues_vs_distance,  // generator spectrum swept over r12
  steady_vs_detuning,       // reduced steady state swept over Delta
  group_study,              // spectra while one coupling group is scaled
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double min = -450.0;
  double max = 450.0;
  int count = 2001;
};

struct RunConfig {
  ScanMode mode = ScanMode::spectrum;
  DriveField drive;                 // omega = 10, delta = 0
  Geometry geometry;                // r12 = 0.04, theta = pi/2, phi = pi/4
  GroupMask mask;                   // all groups on
  SpectrumTermFlags flags;          // all partial sums included
  GridSpec grid;                    // meaning depends on mode
  int group = 4;                    // group-study: which group is swept
  std::vector<double> p_values{0.0, 0.1, 0.3, 0.6, 1.0};
  int workers = 0;                  // 0 = hardware concurrency
  std::string out;                  // output CSV path
};

// Parse config text (and `key=value` override strings); throws ConfigError.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides = {});
RunConfig parse_config_file(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides = {});

// Tabular scan output; rows all have one value per column.
struct ScanResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Run the configured scan.  Throws NumericalError if any output cell is not
// finite or a steady state cannot be determined.
ScanResult run_scan(const RunConfig& config);

// CSV with header row and full round-trip precision (17 significant digits);
// locale independent, byte-identical for identical inputs.
std::string to_csv(const ScanResult& result);
void write_csv(const ScanResult& result, const std::filesystem::path& path);

}  // namespace fluordimer
