#pragma once

// Command implementations behind the `octachord` tool. Each command writes its
// data file(s), reports problems on `diag`, and returns the process exit code:
// 0 success, 1 usage error, 2 I/O error, 3 validation failure.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "octachord/assembly.hpp"
#include "octachord/continuity.hpp"
#include "octachord/geometry.hpp"
#include "octachord/mc_oracle.hpp"
#include "octachord/quadrature.hpp"

namespace octachord::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kIoError = 2, kValidationFailure = 3 };

// 17 significant digits: round-trip exact for doubles.
inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// "start:stop:count"
inline std::optional<GridSpec> parse_grid(const std::string& s) {
  GridSpec g;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop, &g.count, &tail) != 3) return std::nullopt;
  return g;
}

inline std::string grid_string(const GridSpec& g) {
  return fmt(g.start) + ":" + fmt(g.stop) + ":" + std::to_string(g.count);
}

// ---------------------------------------------------------------------------
// Run manifest

struct RunManifest {
  std::string command;
  double edge = 1.0;
  std::string grid;
  std::string quadrature;
  std::string mc;
  std::string version = kVersion;
  std::string timestamp;  // empty unless requested; keeps outputs byte-identical

  std::vector<std::pair<std::string, std::string>> fields() const {
    std::vector<std::pair<std::string, std::string>> f{{"command", command}, {"edge", fmt(edge)}};
    if (!grid.empty()) f.emplace_back("grid", grid);
    if (!quadrature.empty()) f.emplace_back("quadrature", quadrature);
    if (!mc.empty()) f.emplace_back("mc", mc);
    f.emplace_back("version", version);
    if (!timestamp.empty()) f.emplace_back("timestamp", timestamp);
    return f;
  }

  void write_header(std::ostream& os) const {
    os << "# octachord run manifest\n";
    for (const auto& [k, v] : fields()) os << "# " << k << ": " << v << "\n";
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    for (const auto& [k, v] : fields()) j[k] = v;
    return j;
  }
};

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

inline std::string quadrature_string(const QuadratureConfig& q) {
  std::string s = "composite-gauss-legendre graded nodes_per_panel=" + std::to_string(q.nodes_per_panel) +
                  " tolerance=" + fmt(q.tolerance) + " breakpoints=";
  for (std::size_t i = 0; i < q.panel_breakpoints.size(); ++i) s += (i ? "," : "") + fmt(q.panel_breakpoints[i]);
  return s;
}

inline std::string mc_string(const mc::McConfig& c) {
  // thread count deliberately absent: it never changes the numbers
  return "seed=" + std::to_string(c.seed) + " samples=" + std::to_string(c.samples) + " bins=" + std::to_string(c.bins);
}

// Opens `path` for writing; "-" means `fallback`.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      os_ = &fallback;
    } else {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (file_) os_ = &file_;
    }
  }
  explicit operator bool() const { return os_ != nullptr; }
  std::ostream& stream() { return *os_; }
  bool finish() {
    os_->flush();
    return static_cast<bool>(*os_);
  }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

// ---------------------------------------------------------------------------
// table

struct TableOptions {
  double edge = 1.0;
  std::optional<GridSpec> grid;  // default 0:sqrt2*edge:1001
  std::string out = "-";
  QuadratureConfig quadrature = default_quadrature();
  bool stamp = false;
};

inline void write_table_csv(const DensityTable& t, const RunManifest& m, std::ostream& os) {
  m.write_header(os);
  os << "r,g2_edge,g2_vertex,g2_parallel,g2_total,eta,gamma1,gamma0,side\n";
  for (const auto& r : t.rows) {
    os << fmt(r.r) << ',' << fmt(r.g2_edge) << ',' << fmt(r.g2_vertex) << ',' << fmt(r.g2_parallel) << ','
       << fmt(r.g2_total) << ',' << fmt(r.eta) << ',' << fmt(r.gamma1) << ',' << fmt(r.gamma0) << ','
       << to_string(r.side) << '\n';
  }
}

inline int cmd_table(const TableOptions& opt, std::ostream& stdout_stream, std::ostream& diag) {
  DensityTable table;
  const GridSpec grid = opt.grid.value_or(GridSpec{0.0, unit::kDiameter * opt.edge, 1001});
  try {
    table = make_density_table(opt.edge, grid, opt.quadrature);
  } catch (const std::exception& e) {
    diag << "table: " << e.what() << "\n";
    return kUsage;
  }
  RunManifest m{"table", opt.edge, grid_string(grid), quadrature_string(opt.quadrature), "", kVersion,
                opt.stamp ? utc_timestamp() : ""};
  Output out(opt.out, stdout_stream);
  if (!out) {
    diag << "table: cannot open " << opt.out << " for writing\n";
    return kIoError;
  }
  write_table_csv(table, m, out.stream());
  if (!out.finish()) {
    diag << "table: write to " << opt.out << " failed\n";
    return kIoError;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateOptions {
  double edge = 1.0;
  QuadratureConfig quadrature = default_quadrature();
  std::uint64_t rg_samples = 0;  // >0: run the interior-moment oracle for R_G^2
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string out;  // optional extra copy of the JSON report
  bool stamp = false;
};

inline nlohmann::json to_json(const SumRuleReport& r) {
  nlohmann::json j;
  auto put = [&j](const std::string& name, const SumRuleEntry& e) {
    j[name + "_lhs"] = e.lhs;
    j[name + "_rhs"] = e.rhs;
    j[name + "_deviation"] = e.deviation;
    j[name + "_tolerance"] = e.tolerance;
    j[name + "_converged"] = e.converged;
    j[name + "_pass"] = e.pass();
  };
  j["edge"] = r.edge;
  put("porod", r.porod);
  put("gamma0", r.gamma0);
  put("volume", r.volume);
  put("guinier", r.guinier);
  put("jump", r.jump);
  j["rg2_reference"] = r.rg2_reference;
  auto maybe = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
  j["rg2_oracle"] = maybe(r.rg2_oracle);
  j["rg2_oracle_std_err"] = maybe(r.rg2_oracle_std_err);
  j["guinier_oracle_rhs"] = maybe(r.guinier_oracle_rhs);
  j["guinier_oracle_z"] = maybe(r.guinier_oracle_z);
  j["rg_printed_claim"] = r.rg_printed_claim;
  j["rg_printed_claim_deviation"] = r.rg_printed_claim_deviation;
  j["guinier_note"] = r.guinier_note;
  j["pass"] = r.pass();
  return j;
}

inline int cmd_validate(const ValidateOptions& opt, std::ostream& stdout_stream, std::ostream& diag) {
  SumRuleReport rep;
  try {
    rep = sum_rules(opt.quadrature, opt.edge);
    if (opt.rg_samples > 0) {
      mc::McConfig cfg;
      cfg.seed = opt.seed;
      cfg.samples = opt.rg_samples;
      cfg.threads = opt.threads;
      const auto m = mc::interior_moments(make_octahedron(opt.edge), cfg);
      attach_gyration_oracle(rep, m.second_moment, m.second_moment_std_err);
    }
  } catch (const std::exception& e) {
    diag << "validate: " << e.what() << "\n";
    return kUsage;
  }

  nlohmann::json j = to_json(rep);
  const Discontinuity d = discontinuity(opt.edge);
  j["discontinuity"] = {{"location", d.location},
                        {"branch_jump", d.branch_jump},
                        {"surface_jump", d.surface_jump},
                        {"parallel_area", d.parallel_area}};
  bool ok = rep.pass();
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : continuity_checks()) {
    checks.push_back({{"name", c.name},
                      {"at", c.at},
                      {"left", c.left},
                      {"right", c.right},
                      {"deviation", c.deviation},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass()}});
    ok = ok && c.pass();
  }
  j["continuity"] = checks;
  j["pass"] = ok;
  RunManifest m{"validate", opt.edge, "", quadrature_string(opt.quadrature),
                opt.rg_samples
                    ? "seed=" + std::to_string(opt.seed) + " rg_samples=" + std::to_string(opt.rg_samples)
                    : "",
                kVersion, opt.stamp ? utc_timestamp() : ""};
  j["manifest"] = m.to_json();

  const std::string text = j.dump(2);
  stdout_stream << text << "\n";
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    f << text << "\n";
    if (!f) {
      diag << "validate: cannot write " << opt.out << "\n";
      return kIoError;
    }
  }
  if (!ok) diag << "validate: one or more checks failed\n";
  return ok ? kOk : kValidationFailure;
}

// ---------------------------------------------------------------------------
// mc

struct McOptions {
  double edge = 1.0;
  mc::McConfig config{42, 1'000'000, 50, 0, 0};
  int pair_bins = 20;
  std::vector<double> stick_r{0.2, 0.5, 0.9, 1.3};  // unit-edge distances, scaled by edge
  std::string out = "-";
  bool stamp = false;
};

struct ComparisonRow {
  std::string comparison;
  double r_lo = 0, r_hi = 0;
  double analytic = 0;
  double estimate = 0;
  double std_err = 0;

  double z() const {
    if (std_err > 0) return (estimate - analytic) / std_err;
    return estimate == analytic ? 0.0 : std::numeric_limits<double>::infinity();
  }
};

// Mean of f over [lo, hi] by graded Gauss-Legendre split at the breakpoints
// (already scaled to the edge length).
template <class F>
double bin_average(F&& f, double lo, double hi, double edge) {
  std::vector<double> bps;
  for (double b : unit_breakpoints()) bps.push_back(b * edge);
  return integrate_piecewise(f, lo, hi, bps, cached_rule(32)) / (hi - lo);
}

struct McComparison {
  std::vector<ComparisonRow> rows;

  double max_abs_z(const std::string& name) const {
    double m = 0;
    for (const auto& r : rows)
      if (r.comparison == name) m = std::max(m, std::abs(r.z()));
    return m;
  }
  int count_within(const std::string& name, double zmax) const {
    int n = 0;
    for (const auto& r : rows)
      if (r.comparison == name && std::abs(r.z()) < zmax) ++n;
    return n;
  }
  int count(const std::string& name) const {
    int n = 0;
    for (const auto& r : rows)
      if (r.comparison == name) ++n;
    return n;
  }
};

inline const std::vector<std::string>& comparison_names() {
  static const std::vector<std::string> names{"iur_eta", "pair_edge", "pair_vertex", "pair_parallel", "stick_gamma"};
  return names;
}

inline McComparison run_mc_comparison(const McOptions& opt) {
  const auto g = make_octahedron(opt.edge);
  const double edge = opt.edge;
  McComparison out;

  const auto chords = mc::iur_chords(g, opt.config);
  for (std::size_t i = 0; i < chords.size(); ++i) {
    const double lo = chords.bin_edges[i], hi = chords.bin_edges[i + 1];
    out.rows.push_back({"iur_eta", lo, hi, bin_average([edge](double r) { return clpd(r, edge); }, lo, hi, edge),
                        chords.density[i], chords.std_err[i]});
  }

  for (PairTag tag : {PairTag::Edge, PairTag::Vertex, PairTag::Parallel}) {
    mc::McConfig cfg = opt.config;
    cfg.bins = opt.pair_bins;
    const auto hist = mc::mc_pair_density(tag, g, cfg);
    const std::string name = "pair_" + std::string(to_string(tag));
    auto exact = [tag, edge](double r) {
      return gamma2_pair(tag, std::min(r / edge, unit::kDiameter)) / (edge * edge);
    };
    for (std::size_t i = 0; i < hist.size(); ++i) {
      const double lo = hist.bin_edges[i], hi = hist.bin_edges[i + 1];
      out.rows.push_back({name, lo, hi, bin_average(exact, lo, hi, edge), hist.density[i], hist.std_err[i]});
    }
  }

  for (double x : opt.stick_r) {
    const double r = x * edge;
    const auto est = mc::stick_gamma(r, g, opt.config);
    const double exact = r >= unit::kDiameter * edge ? 0.0 : gamma0(r, edge);
    out.rows.push_back({"stick_gamma", r, r, exact, est.estimate, est.std_err});
  }
  return out;
}

inline int cmd_mc(const McOptions& opt, std::ostream& stdout_stream, std::ostream& diag) {
  if (opt.config.samples < 10'000) {
    diag << "mc: --samples must be at least 10000\n";
    return kUsage;
  }
  McComparison cmp;
  try {
    make_octahedron(opt.edge);
    cmp = run_mc_comparison(opt);
  } catch (const std::exception& e) {
    diag << "mc: " << e.what() << "\n";
    return kUsage;
  }
  RunManifest m{"mc", opt.edge, "", "", mc_string(opt.config) + " pair_bins=" + std::to_string(opt.pair_bins), kVersion,
                opt.stamp ? utc_timestamp() : ""};
  Output out(opt.out, stdout_stream);
  if (!out) {
    diag << "mc: cannot open " << opt.out << " for writing\n";
    return kIoError;
  }
  auto& os = out.stream();
  m.write_header(os);
  os << "comparison,r_lo,r_hi,analytic,estimate,std_err,z\n";
  for (const auto& r : cmp.rows) {
    os << r.comparison << ',' << fmt(r.r_lo) << ',' << fmt(r.r_hi) << ',' << fmt(r.analytic) << ',' << fmt(r.estimate)
       << ',' << fmt(r.std_err) << ',' << fmt(r.z()) << '\n';
  }
  for (const auto& name : comparison_names()) {
    const std::string line = "# summary " + name + " max_abs_z=" + fmt(cmp.max_abs_z(name)) +
                             " within_3sigma=" + std::to_string(cmp.count_within(name, 3.0)) + "/" +
                             std::to_string(cmp.count(name));
    os << line << '\n';
    diag << line.substr(2) << '\n';
  }
  if (!out.finish()) {
    diag << "mc: write to " << opt.out << " failed\n";
    return kIoError;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// intensity

struct IntensityOptions {
  double edge = 1.0;
  GridSpec q_grid{0.0, 100.0, 1001};
  std::string out = "-";
  QuadratureConfig quadrature = default_quadrature();
  bool stamp = false;
};

inline int cmd_intensity(const IntensityOptions& opt, std::ostream& stdout_stream, std::ostream& diag) {
  const GridSpec& g = opt.q_grid;
  if (g.count < 2 || !(g.start >= 0.0) || !(g.start < g.stop) || !std::isfinite(g.stop)) {
    diag << "intensity: q grid must satisfy 0 <= start < stop with count >= 2\n";
    return kUsage;
  }
  if (!std::isfinite(opt.edge) || opt.edge <= 0.0) {
    diag << "intensity: edge must be positive and finite\n";
    return kUsage;
  }
  RunManifest m{"intensity", opt.edge, grid_string(g), quadrature_string(opt.quadrature), "", kVersion,
                opt.stamp ? utc_timestamp() : ""};
  Output out(opt.out, stdout_stream);
  if (!out) {
    diag << "intensity: cannot open " << opt.out << " for writing\n";
    return kIoError;
  }
  auto& os = out.stream();
  m.write_header(os);
  os << "q,intensity,q4_intensity\n";
  const double step = (g.stop - g.start) / (g.count - 1);
  for (int i = 0; i < g.count; ++i) {
    const double q = (i + 1 == g.count) ? g.stop : g.start + i * step;
    const double iq = intensity(q, opt.edge, opt.quadrature);
    os << fmt(q) << ',' << fmt(iq) << ',' << fmt(q * q * q * q * iq) << '\n';
  }
  if (!out.finish()) {
    diag << "intensity: write to " << opt.out << " failed\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace octachord::cli
