// octachord: tabulate the octahedron chord-length density, validate it, compare
// against Monte Carlo, and compute the scattering intensity.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "octachord/cli.hpp"

namespace cli = octachord::cli;

namespace {

octachord::GridSpec grid_or_die(const std::string& text, bool& ok) {
  auto g = cli::parse_grid(text);
  ok = g.has_value();
  return g.value_or(octachord::GridSpec{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chord-length probability density of the regular octahedron"};
  app.set_version_flag("--version", cli::kVersion);
  app.require_subcommand(1);

  double edge = 1.0;
  std::string grid_text;
  std::string out = "-";
  bool stamp = false;
  int nodes = 32;
  double tolerance = 1e-10;
  std::uint64_t seed = 42;
  std::uint64_t samples = 1'000'000;
  int bins = 50;
  int pair_bins = 20;
  unsigned threads = 0;
  std::uint64_t rg_samples = 0;
  std::vector<double> stick_r{0.2, 0.5, 0.9, 1.3};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--edge", edge, "Edge length")->check(CLI::PositiveNumber);
    sub->add_option("--out", out, "Output path ('-' for stdout)");
    sub->add_flag("--stamp", stamp, "Record the wall-clock time in the manifest");
  };
  auto quad = [&](CLI::App* sub) {
    sub->add_option("--nodes", nodes, "Gauss-Legendre nodes per panel")->check(CLI::Range(8, 512));
    sub->add_option("--tolerance", tolerance, "Sum-rule tolerance");
  };

  auto* table = app.add_subcommand("table", "Tabulate gamma'' components, eta, gamma' and gamma");
  common(table);
  quad(table);
  table->add_option("--grid", grid_text, "start:stop:count (default 0:sqrt2*edge:1001)");

  auto* validate = app.add_subcommand("validate", "Sum rules, discontinuity and continuity checks (JSON)");
  validate->add_option("--edge", edge, "Edge length")->check(CLI::PositiveNumber);
  validate->add_option("--out", out, "Also write the JSON report here");
  validate->add_flag("--stamp", stamp, "Record the wall-clock time in the manifest");
  quad(validate);
  validate->add_option("--rg-samples", rg_samples, "Monte Carlo samples for the gyration-radius oracle (0: skip)");
  validate->add_option("--seed", seed, "RNG seed for the oracle");
  validate->add_option("--threads", threads, "Worker threads (0: all cores)");

  auto* mc = app.add_subcommand("mc", "Monte Carlo comparisons against the closed forms");
  common(mc);
  mc->add_option("--seed", seed, "RNG seed");
  mc->add_option("--samples", samples, "Samples per estimator")
      ->check(CLI::Range(std::uint64_t{10000}, ~std::uint64_t{0}));
  mc->add_option("--bins", bins, "Chord histogram bins")->check(CLI::PositiveNumber);
  mc->add_option("--pair-bins", pair_bins, "Facet-pair histogram bins")->check(CLI::PositiveNumber);
  mc->add_option("--stick", stick_r, "Stick lengths for gamma(r), in units of the edge");
  mc->add_option("--threads", threads, "Worker threads (0: all cores; results do not depend on it)");

  auto* inten = app.add_subcommand("intensity", "Scattering intensity I(q) and q^4 I(q)");
  common(inten);
  quad(inten);
  inten->add_option("--grid", grid_text, "q grid start:stop:count (default 0:100:1001)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsage;
  }

  octachord::QuadratureConfig q = octachord::default_quadrature();
  q.nodes_per_panel = nodes;
  q.tolerance = tolerance;

  if (*table) {
    cli::TableOptions opt;
    opt.edge = edge;
    opt.out = out;
    opt.quadrature = q;
    opt.stamp = stamp;
    if (!grid_text.empty()) {
      bool ok = false;
      opt.grid = grid_or_die(grid_text, ok);
      if (!ok) {
        std::cerr << "table: --grid must be start:stop:count\n";
        return cli::kUsage;
      }
    }
    return cli::cmd_table(opt, std::cout, std::cerr);
  }
  if (*validate) {
    cli::ValidateOptions opt;
    opt.edge = edge;
    opt.quadrature = q;
    opt.rg_samples = rg_samples;
    opt.seed = seed;
    opt.threads = threads;
    opt.out = out == "-" ? "" : out;
    opt.stamp = stamp;
    return cli::cmd_validate(opt, std::cout, std::cerr);
  }
  if (*mc) {
    cli::McOptions opt;
    opt.edge = edge;
    opt.config.seed = seed;
    opt.config.samples = samples;
    opt.config.bins = bins;
    opt.config.threads = threads;
    opt.pair_bins = pair_bins;
    opt.stick_r = stick_r;
    opt.out = out;
    opt.stamp = stamp;
    return cli::cmd_mc(opt, std::cout, std::cerr);
  }
  cli::IntensityOptions opt;
  opt.edge = edge;
  opt.out = out;
  opt.quadrature = q;
  opt.stamp = stamp;
  if (!grid_text.empty()) {
    bool ok = false;
    opt.q_grid = grid_or_die(grid_text, ok);
    if (!ok) {
      std::cerr << "intensity: --grid must be start:stop:count\n";
      return cli::kUsage;
    }
  }
  return cli::cmd_intensity(opt, std::cout, std::cerr);
}
