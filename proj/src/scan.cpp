#include "fluordimer/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fluordimer/parallel.hpp"

namespace fluordimer {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Entry {
  std::string key, value, where;
};

[[noreturn]] void fail(const Entry& e, const std::string& what) {
  throw ConfigError(e.where + ": " + what);
}

// from_chars keeps parsing independent of the global locale; tolerate an
// explicit leading '+', which from_chars itself does not.
const char* number_begin(const std::string& v) {
  return v.data() + (v.size() > 1 && v[0] == '+');
}

double parse_double(const Entry& e) {
  double v{};
  const char* last = e.value.data() + e.value.size();
  const auto res = std::from_chars(number_begin(e.value), last, v);
  if (res.ec != std::errc() || res.ptr != last)
    fail(e, "expected a number for '" + e.key + "', got '" + e.value + "'");
  return v;
}

int parse_int(const Entry& e) {
  int v{};
  const char* last = e.value.data() + e.value.size();
  const auto res = std::from_chars(number_begin(e.value), last, v);
  if (res.ec != std::errc() || res.ptr != last)
    fail(e, "expected an integer for '" + e.key + "', got '" + e.value + "'");
  return v;
}

bool parse_bool(const Entry& e) {
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  fail(e, "expected on/off for '" + e.key + "', got '" + e.value + "'");
}

std::vector<double> parse_double_list(const Entry& e) {
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Entry sub{e.key, trim(item), e.where};
    out.push_back(parse_double(sub));
  }
  if (out.empty()) fail(e, "expected a comma-separated list for '" + e.key + "'");
  return out;
}

ScanMode parse_mode(const Entry& e) {
  if (e.value == "spectrum") return ScanMode::spectrum;
  if (e.value == "eigenvalues-vs-rabi") return ScanMode::eigenvalues_vs_rabi;
  if (e.value == "eigenvalues-vs-distance")
    return ScanMode::eigenvalues_vs_distance;
  if (e.value == "steady-vs-detuning") return ScanMode::steady_vs_detuning;
  if (e.value == "group-study") return ScanMode::group_study;
  fail(e, "unknown mode '" + e.value +
              "' (expected spectrum, eigenvalues-vs-rabi, "
              "eigenvalues-vs-distance, steady-vs-detuning or group-study)");
}

// Sweep-bound aliases and the only mode each one is meaningful for.
struct Alias {
  const char* key;
  ScanMode mode;
  bool is_min;
};
constexpr Alias kAliases[] = {
    {"omega_tilde_min", ScanMode::spectrum, true},
    {"omega_tilde_max", ScanMode::spectrum, false},
    {"omega_min", ScanMode::eigenvalues_vs_rabi, true},
    {"omega_max", ScanMode::eigenvalues_vs_rabi, false},
    {"r12_min", ScanMode::eigenvalues_vs_distance, true},
    {"r12_max", ScanMode::eigenvalues_vs_distance, false},
    {"delta_min", ScanMode::steady_vs_detuning, true},
    {"delta_max", ScanMode::steady_vs_detuning, false},
};

const char* mode_name(ScanMode m) {
  switch (m) {
    case ScanMode::spectrum: return "spectrum";
    case ScanMode::eigenvalues_vs_rabi: return "eigenvalues-vs-rabi";
    case ScanMode::eigenvalues_vs_distance: return "eigenvalues-vs-distance";
    case ScanMode::steady_vs_detuning: return "steady-vs-detuning";
    default: return "group-study";
  }
}

std::vector<double> linspace(const GridSpec& g) {
  std::vector<double> out(g.count);
  for (int k = 0; k < g.count; ++k)
    out[k] = g.min + (g.max - g.min) * k / (g.count - 1);
  return out;
}

std::string format_cell(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void check_finite(const ScanResult& r, const std::string& context) {
  for (size_t i = 0; i < r.rows.size(); ++i)
    for (size_t j = 0; j < r.rows[i].size(); ++j)
      if (!std::isfinite(r.rows[i][j])) {
        std::ostringstream msg;
        msg << "non-finite value in column '" << r.columns[j] << "', row " << i
            << " (" << context << ")";
        throw NumericalError(msg.str());
      }
}

ScanResult scan_spectrum(const RunConfig& c) {
  const SpectrumSolver solver(c.drive, c.geometry,
                              build_coupling_table(c.geometry, c.mask));
  const SpectrumTrace t =
      solver.evaluate(linspace(c.grid), c.flags, default_detector(), c.workers);
  ScanResult r;
  r.columns = {"omega_tilde_gpi", "S_total", "P1", "P2", "P3", "P4"};
  r.rows.resize(t.omega.size());
  for (size_t k = 0; k < t.omega.size(); ++k)
    r.rows[k] = {t.omega[k], t.total[k], t.p1[k], t.p2[k], t.p3[k], t.p4[k]};
  return r;
}

ScanResult scan_eigenvalues(const RunConfig& c) {
  const bool vs_rabi = c.mode == ScanMode::eigenvalues_vs_rabi;
  const std::vector<double> swept = linspace(c.grid);
  ScanResult r;
  r.columns.reserve(1 + 2 * vdim);
  r.columns.push_back(vs_rabi ? "omega_gpi" : "r12_lpi");
  char buf[32];
  for (int k = 1; k <= vdim; ++k) {
    std::snprintf(buf, sizeof buf, "upsilon_%03d_gpi", k);
    r.columns.push_back(buf);
  }
  for (int k = 1; k <= vdim; ++k) {
    std::snprintf(buf, sizeof buf, "chi_%03d_gpi", k);
    r.columns.push_back(buf);
  }
  r.rows.assign(swept.size(), {});
  parallel_for(swept.size(), c.workers, [&](size_t k) {
    DriveField f = c.drive;
    Geometry g = c.geometry;
    (vs_rabi ? f.rabi : g.r12) = swept[k];
    const Eigen::MatrixXcd m =
        build_liouvillian(f, g, build_coupling_table(g, c.mask));
    const Eigen::VectorXcd xi = liouvillian_eigenvalues(m).eigenvalues;
    std::vector<double>& row = r.rows[k];
    row.resize(1 + 2 * vdim);
    row[0] = swept[k];
    for (int q = 0; q < vdim; ++q) {
      row[1 + q] = xi(q).imag();
      row[1 + vdim + q] = xi(q).real();
    }
  });
  return r;
}

ScanResult scan_steady(const RunConfig& c) {
  const std::vector<double> swept = linspace(c.grid);
  ScanResult r;
  r.columns = {"delta_gpi"};
  for (int p = 1; p <= n_levels; ++p) {
    r.columns.push_back("pop" + std::to_string(p) + "_spvc_on");
    r.columns.push_back("pop" + std::to_string(p) + "_spvc_off");
  }
  r.columns.insert(r.columns.end(),
                   {"re_rho13_spvc_on", "re_rho13_spvc_off",
                    "im_rho13_spvc_on", "im_rho13_spvc_off"});
  r.rows.assign(swept.size(), {});
  parallel_for(swept.size(), c.workers, [&](size_t k) {
    DriveField f = c.drive;
    f.detuning = swept[k];
    Eigen::MatrixXcd reduced[2];
    for (int variant = 0; variant < 2; ++variant) {
      GroupMask mask = c.mask;
      mask.spvc_eom = (variant == 0);
      const Eigen::MatrixXcd m = build_liouvillian(
          f, c.geometry, build_coupling_table(c.geometry, mask));
      reduced[variant] = partial_trace(unvectorize(steady_state(m)), 1);
    }
    std::vector<double>& row = r.rows[k];
    row.push_back(swept[k]);
    for (int p = 0; p < n_levels; ++p) {
      row.push_back(reduced[0](p, p).real());
      row.push_back(reduced[1](p, p).real());
    }
    row.insert(row.end(), {reduced[0](0, 2).real(), reduced[1](0, 2).real(),
                           reduced[0](0, 2).imag(), reduced[1](0, 2).imag()});
  });
  return r;
}

ScanResult scan_group_study(const RunConfig& c) {
  const std::vector<double> grid = linspace(c.grid);
  ScanResult r;
  r.columns = {"omega_tilde_gpi"};
  std::vector<SpectrumTrace> traces(c.p_values.size());
  for (size_t v = 0; v < c.p_values.size(); ++v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "S_p%g", c.p_values[v]);
    r.columns.push_back(buf);
    GroupMask mask = c.mask;
    mask.scale[c.group - 1] = c.p_values[v];
    const SpectrumSolver solver(c.drive, c.geometry,
                                build_coupling_table(c.geometry, mask));
    traces[v] = solver.evaluate(grid, c.flags, default_detector(), c.workers);
  }
  r.rows.resize(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) {
    r.rows[k].push_back(grid[k]);
    for (const SpectrumTrace& t : traces) r.rows[k].push_back(t.total[k]);
  }
  return r;
}

}  // namespace

RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides) {
  std::vector<Entry> entries;
  std::stringstream ss(text);
  std::string line;
  for (int num = 1; std::getline(ss, line); ++num) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(num) +
                        ": expected 'key = value', got '" + line + "'");
    Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
            "line " + std::to_string(num)};
    if (e.key.empty() || e.value.empty())
      throw ConfigError(e.where + ": expected 'key = value', got '" + line + "'");
    entries.push_back(std::move(e));
  }
  for (size_t k = 0; k < overrides.size(); ++k) {
    const std::string& o = overrides[k];
    const std::string where = "override " + std::to_string(k + 1);
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == o.size())
      throw ConfigError(where + ": expected key=value, got '" + o + "'");
    entries.push_back(
        {trim(o.substr(0, eq)), trim(o.substr(eq + 1)), where});
  }

  RunConfig c;
  // The mode decides which sweep-bound aliases are admissible, so settle it
  // first; the last assignment wins, as for every other key.
  for (const Entry& e : entries)
    if (e.key == "mode") c.mode = parse_mode(e);

  for (const Entry& e : entries) {
    if (e.key == "mode") continue;
    if (e.key == "omega") c.drive.rabi = parse_double(e);
    else if (e.key == "delta") c.drive.detuning = parse_double(e);
    else if (e.key == "r12") c.geometry.r12 = parse_double(e);
    else if (e.key == "theta") c.geometry.theta = parse_double(e);
    else if (e.key == "phi") c.geometry.phi = parse_double(e);
    else if (e.key == "p1") c.mask.scale[0] = parse_double(e);
    else if (e.key == "p2") c.mask.scale[1] = parse_double(e);
    else if (e.key == "p3") c.mask.scale[2] = parse_double(e);
    else if (e.key == "p4") c.mask.scale[3] = parse_double(e);
    else if (e.key == "p5") c.mask.scale[4] = parse_double(e);
    else if (e.key == "spvc_eom") c.mask.spvc_eom = parse_bool(e);
    else if (e.key == "include_p1") c.flags.p1 = parse_bool(e);
    else if (e.key == "include_p2") c.flags.p2 = parse_bool(e);
    else if (e.key == "include_p3") c.flags.p3 = parse_bool(e);
    else if (e.key == "include_p4") c.flags.p4 = parse_bool(e);
    else if (e.key == "grid_min") c.grid.min = parse_double(e);
    else if (e.key == "grid_max") c.grid.max = parse_double(e);
    else if (e.key == "grid_count") c.grid.count = parse_int(e);
    else if (e.key == "group") c.group = parse_int(e);
    else if (e.key == "p_values") c.p_values = parse_double_list(e);
    else if (e.key == "workers") c.workers = parse_int(e);
    else if (e.key == "out") c.out = e.value;
    else {
      bool matched = false;
      for (const Alias& a : kAliases) {
        if (e.key != a.key) continue;
        if (c.mode != a.mode)
          fail(e, std::string("key '") + a.key + "' is only valid in mode " +
                      mode_name(a.mode) + " (mode is " + mode_name(c.mode) +
                      ")");
        (a.is_min ? c.grid.min : c.grid.max) = parse_double(e);
        matched = true;
        break;
      }
      if (!matched) fail(e, "unknown key '" + e.key + "'");
    }
  }

  if (c.grid.count < 2) throw ConfigError("grid_count must be at least 2");
  if (!(c.grid.max > c.grid.min))
    throw ConfigError("grid_max must exceed grid_min");
  if (!(c.geometry.r12 > 0.0)) throw ConfigError("r12 must be positive");
  if (c.mode == ScanMode::eigenvalues_vs_distance && !(c.grid.min > 0.0))
    throw ConfigError("distance sweep requires positive bounds");
  if (c.drive.rabi < 0.0) throw ConfigError("omega must be non-negative");
  for (int k = 0; k < 5; ++k)
    if (c.mask.scale[k] < 0.0 || c.mask.scale[k] > 1.0)
      throw ConfigError("p" + std::to_string(k + 1) + " must be in [0, 1]");
  if (c.group < 1 || c.group > 5)
    throw ConfigError("group must be in 1..5");
  for (double p : c.p_values)
    if (p < 0.0 || p > 1.0) throw ConfigError("p_values must be in [0, 1]");
  if (c.workers < 0) throw ConfigError("workers must be at least 1");
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides);
}

ScanResult run_scan(const RunConfig& config) {
  ScanResult r;
  try {
    switch (config.mode) {
      case ScanMode::spectrum: r = scan_spectrum(config); break;
      case ScanMode::eigenvalues_vs_rabi:
      case ScanMode::eigenvalues_vs_distance:
        r = scan_eigenvalues(config);
        break;
      case ScanMode::steady_vs_detuning: r = scan_steady(config); break;
      case ScanMode::group_study: r = scan_group_study(config); break;
    }
  } catch (const SteadyStateError& err) {
    std::ostringstream msg;
    msg << "scan failed (mode " << mode_name(config.mode) << ", omega "
        << config.drive.rabi << ", delta " << config.drive.detuning << ", r12 "
        << config.geometry.r12 << "): " << err.what();
    throw NumericalError(msg.str());
  }
  check_finite(r, mode_name(config.mode));
  return r;
}

std::string to_csv(const ScanResult& result) {
  std::string out;
  for (size_t j = 0; j < result.columns.size(); ++j) {
    if (j) out += ',';
    out += result.columns[j];
  }
  out += '\n';
  for (const std::vector<double>& row : result.rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_cell(row[j]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const ScanResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  const std::string text = to_csv(result);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ConfigError("failed writing output file: " + path.string());
}

}  // namespace fluordimer
