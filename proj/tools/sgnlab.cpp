#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgn/sgn.hpp"

namespace fs = std::filesystem;
using namespace sgn;

namespace {

constexpr double kPi = std::numbers::pi;

struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Run {
  Config cfg;
  fs::path out;
  std::uint64_t seed = 1;
  bool verbose = false;

  void log(const std::string& msg) const {
    if (verbose) std::cerr << "[sgnlab] " << msg << "\n";
  }

  std::string preamble(std::map<std::string, std::string> knobs) const {
    knobs["seed"] = std::to_string(seed);
    return csv_preamble(cfg, knobs);
  }

  void write(const std::string& name, const std::string& body) const {
    std::ofstream f(out / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (out / name).string());
    f << body;
    log("wrote " + (out / name).string());
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<int> int_list(const Config& cfg, const std::string& key, const std::vector<int>& fallback) {
  std::vector<double> def(fallback.begin(), fallback.end());
  std::vector<int> out;
  for (double v : cfg.get_list(key, def)) {
    if (v != std::floor(v)) throw ConfigError("config: " + key + " must hold integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void require_kind(const Metric& metric, SurfaceKind kind, const std::string& what) {
  if (metric.surface().kind() != kind)
    throw ConfigError("config: " + what + " needs surface.kind = " + to_string(kind));
}

SolverMode parse_mode(const std::string& s) {
  if (s == "auto") return SolverMode::Auto;
  if (s == "minimize") return SolverMode::Minimize;
  if (s == "critical") return SolverMode::Critical;
  throw ConfigError("config: unknown solve.mode '" + s + "'");
}

// Gaussian jitter of interior edge samples in chart coordinates.
GammaNet perturb(const GammaNet& net, const Surface& surface, double amplitude, std::uint64_t seed) {
  GammaNet out = net;
  if (amplitude <= 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (auto& line : out.curves())
    for (std::size_t i = 1; i + 1 < line.size(); ++i) {
      const Vec2 x = line[i].x + amplitude * Vec2(n01(rng), n01(rng));
      if (surface.in_domain(line[i].chart, x)) line[i] = surface.normalize({line[i].chart, x});
    }
  return out;
}

GammaNet initial_net(const Run& run, const Metric& metric) {
  const Config& cfg = run.cfg;
  const Surface& s = metric.surface();
  if (cfg.has("solve.net")) return load_net(cfg.get_string("solve.net", ""));
  const std::string builtin = cfg.get_string("solve.builtin", "torus-line");
  const int n = static_cast<int>(cfg.get_int("solve.samples", 64));
  if (n < 4) throw ConfigError("config: solve.samples must be at least 4");
  if (builtin == "torus-line") {
    require_kind(metric, SurfaceKind::FlatTorus, "torus-line");
    const auto cls = int_list(cfg, "solve.class", {1, 0});
    if (cls.size() != 2 || (cls[0] == 0 && cls[1] == 0)) throw ConfigError("config: solve.class must be two integers");
    const auto start = cfg.get_list("solve.start", {0.1, 0.2});
    if (start.size() != 2) throw ConfigError("config: solve.start must be two numbers");
    return torus_line(s, {start[0], start[1]}, {double(cls[0]), double(cls[1])}, n);
  }
  if (builtin == "torus-theta") {
    require_kind(metric, SurfaceKind::FlatTorus, "torus-theta");
    return torus_theta(s, n);
  }
  if (builtin == "sphere-theta") {
    require_kind(metric, SurfaceKind::RoundSphere, "sphere-theta");
    return sphere_theta(s, n);
  }
  if (builtin == "parallel") {
    const double frac = cfg.get_double("solve.height", 0.5);
    return parallel_loop(s, frac * s.param_extent()[0], n);
  }
  throw ConfigError("config: unknown solve.builtin '" + builtin + "'");
}

int cmd_solve(const Run& run) {
  const Metric metric = metric_from_config(run.cfg);
  const GammaNet init = perturb(initial_net(run, metric), metric.surface(), run.cfg.get_double("solve.perturb", 0.0),
                                run.seed);
  SolverOptions opts;
  opts.tolerance = run.cfg.get_double("solve.tolerance", opts.tolerance);
  opts.max_iterations = static_cast<int>(run.cfg.get_int("solve.max_iterations", opts.max_iterations));
  opts.mode = parse_mode(run.cfg.get_string("solve.mode", "auto"));
  opts.seed = run.seed;
  const SolveResult r = solve_stationary(init, metric, opts);

  save_net(r.net, (run.out / "solved_net.json").string());
  nlohmann::json rep;
  rep["config_hash"] = run.cfg.hash_hex();
  rep["seed"] = run.seed;
  rep["quadrature_resolution"] = metric.quadrature_resolution();
  rep["status"] = to_string(r.status);
  rep["iterations"] = r.iterations;
  rep["length"] = r.report.length;
  rep["edge_residual"] = r.report.edge_residual;
  rep["vertex_residual"] = r.report.vertex_residual;
  rep["total_first_variation_norm"] = r.report.total_first_variation_norm;
  rep["monotone"] = r.monotone;
  rep["degenerate_family"] = r.degenerate_family;
  rep["collapsed_edges"] = r.collapsed_edges;
  run.write("solve_report.json", rep.dump(2) + "\n");
  std::cout << "status " << to_string(r.status) << "  length " << num(r.report.length) << "  residual "
            << num(r.report.total_first_variation_norm) << "\n";
  if (r.status != SolverStatus::Converged) throw AssertionFailure("solver did not converge");
  return 0;
}

int cmd_variation(const Run& run) {
  const auto rows = variation_battery(run.seed);
  std::string csv = run.preamble({}) + "net,direction,analytic,fd,abs_error,rel_error,pass\n";
  int failed = 0;
  for (const auto& r : rows) {
    csv += r.net + "," + r.direction + "," + num(r.analytic) + "," + num(r.fd) + "," + num(r.abs_error) + "," +
           num(r.rel_error) + "," + (r.pass ? "1" : "0") + "\n";
    failed += !r.pass;
    if (!r.pass) std::cerr << "mismatch: " << r.net << " / " << r.direction << " " << r.note << "\n";
  }
  run.write("variation_battery.csv", csv);
  std::cout << rows.size() - failed << "/" << rows.size() << " first-variation checks agree\n";
  if (failed) throw AssertionFailure("first-variation battery has mismatches");
  return 0;
}

int cmd_dumbbell(Run run) {
  if (!run.cfg.has("surface.kind")) run.cfg.set("surface.kind", "dumbbell");
  const Metric metric = metric_from_config(run.cfg);
  require_kind(metric, SurfaceKind::Dumbbell, "dumbbell");
  const auto surface = std::dynamic_pointer_cast<const RevolutionSurface>(metric.surface_ptr());
  const double lo = run.cfg.get_double("dumbbell.t_min", -0.3);
  const double hi = run.cfg.get_double("dumbbell.t_max", 0.3);
  const double step = run.cfg.get_double("dumbbell.t_step", 0.05);
  const int res = static_cast<int>(run.cfg.get_int("dumbbell.resolution", 201));
  const double slope_step = run.cfg.get_double("dumbbell.slope_step", 0.05);
  if (!(step > 0.0) || hi < lo || std::abs(lo) >= 1.0 || std::abs(hi) >= 1.0)
    throw ConfigError("config: dumbbell t range must lie in (-1, 1) with positive step");
  std::vector<double> ts;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i <= count; ++i) ts.push_back(std::abs(lo + i * step) < 1e-12 ? 0.0 : lo + i * step);

  const DumbbellKinkReport rep = dumbbell_kink_experiment(surface, ts, res, slope_step);
  std::string csv = run.preamble({{"resolution", std::to_string(res)}, {"slope_step", num(slope_step)}}) +
                    "t,estimate,model,rel_error,realizer,kink\n";
  for (const auto& r : rep.rows)
    csv += num(r.t) + "," + num(r.estimate) + "," + num(r.model) + "," + num(r.rel_error) + "," +
           to_string(dumbbell_realizer(r.t)) + "," + (r.t == 0.0 && rep.at_zero.kink ? "1" : "0") + "\n";
  run.write("dumbbell.csv", csv);
  std::cout << "max relative error " << num(rep.max_rel_error) << "  slopes at 0: " << num(rep.at_zero.left_slope)
            << " / " << num(rep.at_zero.right_slope) << "  kink " << (rep.at_zero.kink ? "yes" : "no") << "\n";
  if (rep.max_rel_error > 0.02 || !rep.at_zero.kink) throw AssertionFailure("dumbbell widths disagree with the model");
  return 0;
}

SweepoutRecipe default_recipe(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::FlatTorus: return SweepoutRecipe::TorusXLevels;
    case SurfaceKind::RoundSphere: return SweepoutRecipe::SphereLatitudes;
    case SurfaceKind::Dumbbell: return SweepoutRecipe::DumbbellParallels;
  }
  return SweepoutRecipe::TorusXLevels;
}

int cmd_widths(const Run& run) {
  const Metric metric = metric_from_config(run.cfg);
  const auto p_list = int_list(run.cfg, "widths.p", {1, 4, 9});
  const auto t_grid = run.cfg.get_list("widths.t", {-0.2, 0.0, 0.2});
  const int res = static_cast<int>(run.cfg.get_int("widths.resolution", 41));
  const bool shorten = run.cfg.get_bool("widths.shorten", false);
  SweepoutRecipe recipe = default_recipe(metric.surface().kind());
  if (run.cfg.has("widths.recipe")) {
    try {
      recipe = parse_recipe(run.cfg.get_string("widths.recipe", ""));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  double box = 1.0;
  for (double t : t_grid) box = std::max(box, 2.0 * std::abs(t));
  const ConformalFamily family(metric, {[](const SurfacePoint&) { return 1.0; }}, box);
  const WeylProbe probe = weyl_ratio_probe(family, metric.surface_ptr(), p_list, t_grid, recipe, res, shorten);

  const auto pre = run.preamble({{"resolution", std::to_string(res)},
                                 {"recipe", to_string(recipe)},
                                 {"quadrature_resolution", std::to_string(metric.quadrature_resolution())}});
  std::string csv = pre + "p,t,upper_bound,shortened_length,h_p\n";
  for (const auto& r : probe.rows)
    csv += std::to_string(r.p) + "," + num(r.t) + "," + num(r.upper_bound) + "," + num(r.shortened_length) + "," +
           num(r.h_p) + "\n";
  run.write("widths.csv", csv);
  std::string lip = pre + "p,lipschitz\n";
  for (const auto& [p, l] : probe.lipschitz) lip += std::to_string(p) + "," + num(l) + "\n";
  run.write("weyl_lipschitz.csv", lip);
  std::cout << probe.rows.size() << " width rows\n";
  return 0;
}

int cmd_partition(const Run& run) {
  const Metric metric = metric_from_config(run.cfg);
  const double eps1 = run.cfg.get_double("partition.eps1", 0.3);
  const int k_min = static_cast<int>(run.cfg.get_int("partition.k_min", 4));
  const double collar = run.cfg.get_double("partition.collar_fraction", 0.2);
  const int grid = static_cast<int>(run.cfg.get_int("partition.grid", 48));
  if (!(collar > 0.0 && collar < 0.5)) throw ConfigError("config: partition.collar_fraction must lie in (0, 0.5)");
  const BumpSystem bumps = build_partition(metric, eps1, k_min, collar);
  run.write("bumps.json", bumps.to_json() + "\n");

  const auto pre = run.preamble({{"eps1", num(eps1)}, {"grid", std::to_string(grid)}});
  std::string cells = pre + "k,lo_u,lo_v,hi_u,hi_v,full_angle\n";
  for (int k = 0; k < bumps.size(); ++k) {
    const auto& c = bumps.cells()[k];
    cells += std::to_string(k) + "," + num(c.lo[0]) + "," + num(c.lo[1]) + "," + num(c.hi[0]) + "," + num(c.hi[1]) +
             "," + (c.full_angle ? "1" : "0") + "\n";
  }
  run.write("cells.csv", cells);

  const Surface& s = metric.surface();
  const Vec2 ext = s.param_extent();
  double worst = 0.0;
  std::string plot = pre + "u,v,cell,psi_max,psi_sum\n";
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Vec2 u(ext[0] * (i + 0.5) / grid, ext[1] * (j + 0.5) / grid);
      const SurfacePoint p = s.from_param(u);
      const Eigen::VectorXd psi = bumps.psi_all(p);
      worst = std::max(worst, std::abs(psi.sum() - 1.0));
      plot += num(u[0]) + "," + num(u[1]) + "," + std::to_string(bumps.cell_of(p)) + "," + num(psi.maxCoeff()) + "," +
              num(psi.sum()) + "\n";
    }
  run.write("psi_grid.csv", plot);
  std::cout << "K = " << bumps.size() << "  max cell diameter " << num(bumps.max_cell_diameter())
            << "  enlarged radius " << num(bumps.max_enlarged_radius()) << "\n";
  if (worst > 1e-10) throw AssertionFailure("partition of unity is not normalized");
  return 0;
}

int cmd_equidistribute(Run run) {
  if (!run.cfg.has("surface.kind")) run.cfg.set("surface.kind", "torus");
  const Metric metric = metric_from_config(run.cfg);
  require_kind(metric, SurfaceKind::FlatTorus, "equidistribute");
  const auto torus = metric.surface_ptr();
  const Surface& s = *torus;
  if (s.param_extent() != Vec2(1.0, 1.0)) throw ConfigError("config: equidistribute needs the unit torus");
  const int k_max = static_cast<int>(run.cfg.get_int("equidistribute.k_max", 200));
  const double eps1 = run.cfg.get_double("equidistribute.eps1", 0.3);
  const int family_size = static_cast<int>(run.cfg.get_int("equidistribute.family_size", 8));
  const int blocks = static_cast<int>(run.cfg.get_int("equidistribute.merge_blocks", 20));
  const auto d_values = run.cfg.get_list("equidistribute.merge_D", {0.1, 0.5, 2.0});
  if (k_max < 1 || family_size < 1 || family_size > k_max || blocks < 1)
    throw ConfigError("config: equidistribute sizes must be positive with family_size <= k_max");

  const auto pre = run.preamble({{"k_max", std::to_string(k_max)}, {"eps1", num(eps1)}});
  bool ok = true;

  std::vector<GammaNet> seq;
  for (int k = 1; k <= k_max; ++k) seq.push_back(torus_line(s, {0.0, 0.0}, {double(k), 1.0}, std::max(64, 8 * k)));
  const ScalarField mode = [torus](const SurfacePoint& p) {
    const Vec2 u = torus->param(p);
    return std::sin(2 * kPi * u[0]) * std::sin(2 * kPi * u[1]);
  };
  std::string mcsv = pre + "k,integral,closed_form,error\n";
  for (int k = 1; k <= k_max; ++k) {
    const double v = integrate(seq[k - 1], mode, metric);
    const double c = torus_mode_line_integral(k);
    ok = ok && std::abs(v - c) <= 1e-10;
    mcsv += std::to_string(k) + "," + num(v) + "," + num(c) + "," + num(std::abs(v - c)) + "\n";
  }
  run.write("mode_integrals.csv", mcsv);

  const ScalarField bump = [torus](const SurfacePoint& p) {
    const Vec2 u = torus->param(p);
    return plateau(u[0], 0.3, 0.7, 0.1, 1.0) * plateau(u[1], 0.3, 0.7, 0.1, 1.0);
  };
  const auto ratio = running_ratio(seq, bump, metric);
  std::string rcsv = pre + "k,value\n";
  for (std::size_t k = 0; k < ratio.size(); ++k) rcsv += std::to_string(k + 1) + "," + num(ratio[k]) + "\n";
  run.write("running_ratio.csv", rcsv);
  ok = ok && std::abs(ratio.back() - 0.25) <= 0.01;

  // Length-weighted family of the first lines against a bump system.
  const BumpSystem bumps = build_partition(metric, eps1, 4);
  WeightedNetFamily fam;
  double total = 0.0;
  for (int j = 0; j < family_size; ++j) {
    fam.nets.push_back(seq[j]);
    fam.alpha.push_back(length(seq[j], metric));
    total += fam.alpha.back();
  }
  for (double& a : fam.alpha) a /= total;
  const DiscrepancyReport disc = discrepancy(fam, metric, bumps);
  std::string dcsv = pre + "k,value\n";
  for (int k = 0; k < bumps.size(); ++k) dcsv += std::to_string(k) + "," + num(disc.D[k]) + "\n";
  run.write("discrepancy.csv", dcsv);

  // Synthetic blocks with ratios alpha + D / m merged by length.
  const double alpha = 0.25;
  const std::vector<double> lengths{1.0, std::sqrt(2.0)};
  std::string gcsv = pre + "D,m,repeats,ratio,envelope\n";
  for (double D : d_values) {
    std::vector<MergeBlock> mb;
    std::vector<std::vector<double>> integrals;
    for (int m = 1; m <= blocks; ++m) {
      const RationalWeights w = rationalize_weights({0.5, 0.5}, lengths, m);
      mb.push_back({m, lengths, w.c});
      const double r = alpha + D / m;
      integrals.push_back({r * lengths[0], r * lengths[1]});
    }
    const MergedSequence merged = merge_sequences(mb);
    const auto ratios = merged_block_ratios(merged, integrals);
    for (int m = 1; m <= blocks; ++m) {
      const double env = 2.0 * D / m;
      ok = ok && std::abs(ratios[m - 1] - alpha) <= env;
      gcsv += num(D) + "," + std::to_string(m) + "," + merged.repeats[m - 1].str() + "," +
              num(ratios[m - 1]) + "," + num(env) + "\n";
    }
  }
  run.write("merge.csv", gcsv);
  std::cout << "final running ratio " << num(ratio.back()) << "  max discrepancy " << num(disc.max) << " (threshold "
            << num(disc.threshold) << ")\n";
  if (!ok) throw AssertionFailure("equidistribution checks failed");
  return 0;
}

int cmd_selftest(const Run& run) {
  const auto rows = invariance_suite(run.seed);
  std::string csv = run.preamble({}) + "check,value,tolerance,pass\n";
  bool ok = true;
  for (const auto& r : rows) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  (" << num(r.value) << " <= " << num(r.tolerance) << ")"
              << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
    csv += r.name + "," + num(r.value) + "," + num(r.tolerance) + "," + (r.pass ? "1" : "0") + "\n";
    ok = ok && r.pass;
  }
  run.write("selftest.csv", csv);
  if (!ok) throw AssertionFailure("self-test failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary geodesic network lab"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = "sgn-out";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool verbose = false;
  app.add_option("--config", config_path, "Config file (INI)");
  app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed");
  app.add_option("--threads", threads, "Worker threads (0 = hardware)");
  app.add_flag("--verbose", verbose, "Progress on standard error");
  app.fallthrough();

  const std::map<std::string, std::string> help = {
      {"solve-net", "Solve for a stationary geodesic network"},
      {"check-variation", "First-variation battery against finite differences"},
      {"dumbbell", "Width kink experiment on the dumbbell family"},
      {"widths", "Sweepout width tables and Weyl ratios"},
      {"partition", "Build a bump system"},
      {"equidistribute", "Discrepancy, merging and running ratios on the torus"},
      {"selftest", "Invariance property suite"},
  };
  for (const auto& [name, text] : help) app.add_subcommand(name, text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Run run;
  run.verbose = verbose;
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    run.cfg = config_path.empty() ? Config() : Config::load(config_path);
    if (seed_opt->count() > 0) run.cfg.set("run.seed", std::to_string(seed));
    run.seed = static_cast<std::uint64_t>(run.cfg.get_int("run.seed", 1));
    set_thread_count(threads);
    run.out = out_dir;
    std::error_code ec;
    fs::create_directories(run.out, ec);
    if (ec) throw ConfigError("cannot create output directory " + out_dir);
    run.log("config hash " + run.cfg.hash_hex() + ", seed " + std::to_string(run.seed));

    if (cmd == "solve-net") return cmd_solve(run);
    if (cmd == "check-variation") return cmd_variation(run);
    if (cmd == "dumbbell") return cmd_dumbbell(run);
    if (cmd == "widths") return cmd_widths(run);
    if (cmd == "partition") return cmd_partition(run);
    if (cmd == "equidistribute") return cmd_equidistribute(run);
    return cmd_selftest(run);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << cmd << " failed: " << e.what() << "\n";
    return 1;
  }
}
