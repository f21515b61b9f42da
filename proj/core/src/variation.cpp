#include "sgn/variation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "sgn/catalog.hpp"
#include "sgn/errors.hpp"
#include "sgn/parallel.hpp"

namespace sgn {

FirstVariation first_variation(const GammaNet& net, const Metric& metric, const PerturbationDirection& dir,
                               double stationarity_tolerance) {
  FirstVariation out;
  out.residual = stationarity_residual(net, metric).total_first_variation_norm;
  out.stationary = out.residual <= stationarity_tolerance;
  const Surface& surface = metric.surface();
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& line = net.curve(e);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      const int c = segment_chart(line[i], line[i + 1]);
      const auto [pa, pb] = segment_coords(surface, line[i], line[i + 1]);
      const Vec2 d = pb - pa;
      const double sa = std::sqrt(d.dot(metric.tensor({c, pa}) * d));
      const double sb = std::sqrt(d.dot(metric.tensor({c, pb}) * d));
      if (!(sa > 0.0) || !(sb > 0.0)) throw DegenerateNet("zero-length segment in first variation");
      acc += 0.25 * (d.dot(dir.tensor({c, pa}) * d) / sa + d.dot(dir.tensor({c, pb}) * d) / sb);
    }
    out.value += net.multiplicity(e) * acc;
  }
  return out;
}

TensorLineFamily::TensorLineFamily(Metric base, TensorField direction)
    : base_(std::move(base)), dir_(std::move(direction)) {}

Metric TensorLineFamily::at(const Eigen::VectorXd& t) const {
  if (t.size() != 1) throw DomainError("tensor line family is one-dimensional");
  return t[0] == 0.0 ? base_ : base_.with_tensor(dir_, t[0]);
}

TensorField TensorLineFamily::derivative(const Eigen::VectorXd&, const Eigen::VectorXd& v) const {
  const double s = v[0];
  auto dir = dir_;
  return [dir, s](const SurfacePoint& p) { return Mat2(s * dir(p)); };
}

FdDerivative fd_length_derivative(const GammaNet& net, const MetricFamily& family, const Eigen::VectorXd& t,
                                  const Eigen::VectorXd& v, const FdOptions& opts) {
  if (opts.steps.empty()) throw DomainError("no finite-difference steps");
  const std::size_t nsteps = std::min<std::size_t>(opts.steps.size(), 2);
  std::vector<double> lengths(2 * nsteps, 0.0);
  std::vector<std::string> failures(2 * nsteps);
  parallel_for(2 * nsteps, [&](std::size_t job) {
    const double h = opts.steps[job / 2] * (job % 2 == 0 ? 1.0 : -1.0);
    try {
      const Metric g = family.at(t + h * v);
      const SolveResult r = solve_stationary(net, g, opts.solver);
      const bool ok = r.status == SolverStatus::Converged ||
                      (r.status != SolverStatus::EdgeCollapse && r.report.total_first_variation_norm <= 1e-8);
      if (!ok) failures[job] = "re-solve " + to_string(r.status);
      lengths[job] = length(r.net, g);
    } catch (const std::exception& ex) {
      failures[job] = ex.what();
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw ApproximationFailure("finite-difference derivative failed: " + f);

  FdDerivative out;
  for (std::size_t k = 0; k < nsteps; ++k)
    out.central.push_back((lengths[2 * k] - lengths[2 * k + 1]) / (2.0 * opts.steps[k]));
  if (nsteps == 1) {
    out.value = out.central[0];
  } else {
    const double h1 = opts.steps[0] * opts.steps[0];
    const double h2 = opts.steps[1] * opts.steps[1];
    out.value = (h1 * out.central[1] - h2 * out.central[0]) / (h1 - h2);
  }
  return out;
}

WidthSlopeReport width_derivative_check(const std::function<double(double)>& width, const MetricFamily& family,
                                        double t, const std::vector<GammaNet>& realizing_nets, double h,
                                        double tolerance) {
  if (family.dimension() != 1) throw DomainError("width check needs a one-parameter family");
  WidthSlopeReport rep;
  rep.t = t;
  rep.tolerance = tolerance;
  std::array<double, 5> w{};
  const std::array<double, 5> ts{t - 2 * h, t - h, t, t + h, t + 2 * h};
  parallel_for(5, [&](std::size_t i) { w[i] = width(ts[i]); });
  rep.width = w[2];
  rep.left_slope = (w[2] - w[1]) / h;
  rep.right_slope = (w[3] - w[2]) / h;
  rep.central_slope = (w[3] - w[1]) / (2 * h);
  const double outer_left = (w[1] - w[0]) / h;
  const double outer_right = (w[4] - w[3]) / h;
  rep.noise_floor = std::max({std::abs(outer_left - rep.left_slope), std::abs(outer_right - rep.right_slope),
                              1e-9 * std::abs(rep.width)});
  rep.kink = std::abs(rep.right_slope - rep.left_slope) > 10.0 * rep.noise_floor;

  const Eigen::VectorXd tv = Eigen::VectorXd::Constant(1, t);
  const Metric g = family.at(tv);
  const PerturbationDirection dir{family.derivative(tv, Eigen::VectorXd::Ones(1)), "family"};
  for (const auto& net : realizing_nets) rep.first_variations.push_back(first_variation(net, g, dir).value);

  auto matches = [&](double slope) {
    return std::any_of(rep.first_variations.begin(), rep.first_variations.end(), [&](double fv) {
      return std::abs(fv - slope) <= tolerance * std::max(std::abs(slope), 1e-12);
    });
  };
  rep.agrees = rep.kink ? matches(rep.left_slope) && matches(rep.right_slope) : matches(rep.central_slope);
  return rep;
}

std::vector<Eigen::VectorXd> cube_grid(int K, int n) {
  if (K < 1 || n < 2) throw DomainError("cube grid needs K >= 1 and n >= 2");
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(K, 0);
  while (true) {
    Eigen::VectorXd s(K);
    for (int k = 0; k < K; ++k) s[k] = -1.0 + 2.0 * idx[k] / (n - 1);
    out.push_back(s);
    int k = 0;
    while (k < K && ++idx[k] == n) idx[k++] = 0;
    if (k == K) break;
  }
  return out;
}

EpsCloseResult eps_close(const std::vector<Eigen::VectorXd>& f_samples, const std::vector<Eigen::VectorXd>& g_samples,
                         double delta, double eps) {
  if (f_samples.size() != g_samples.size() || f_samples.empty())
    throw StructuralError("eps_close needs samples on matching grids");
  if (!(delta > 0.0)) throw DomainError("eps_close needs delta > 0");
  EpsCloseResult r;
  for (std::size_t i = 0; i < f_samples.size(); ++i) {
    if (f_samples[i].size() != g_samples[i].size()) throw StructuralError("eps_close sample size mismatch");
    r.sup = std::max(r.sup, (f_samples[i] - g_samples[i]).cwiseAbs().maxCoeff() / delta);
  }
  r.close = r.sup < eps;
  return r;
}

// ----------------------------------------------------------------- battery

namespace {

constexpr double kPi = std::numbers::pi;

struct BatteryNet {
  std::string name;
  Metric metric;
  GammaNet net;
};

std::vector<BatteryNet> battery_nets() {
  const auto torus = make_flat_torus();
  const Metric bumpy_torus = Metric(torus).with_conformal(
      param_field(torus, [](const Vec2& u) { return 0.15 * std::cos(2 * kPi * u[1]) + 0.1 * std::cos(2 * kPi * u[0]); }));
  const auto sphere = make_round_sphere();
  const Metric bumpy_sphere = Metric(sphere).with_conformal(ambient_field(sphere, [](const Eigen::VectorXd& x) {
    return 0.4 * x[2] * x[2] + 0.15 * x[0] * x[0] + 0.3 * (x[0] * x[0] * x[0] - 3.0 * x[0] * x[1] * x[1]);
  }));
  const auto dumbbell = make_dumbbell();
  const Metric dumbbell_metric(dumbbell);
  const auto& prof = dynamic_cast<const DumbbellProfile&>(dumbbell->profile());

  const Eigen::Vector3d ex(1, 0, 0), ey(0, 1, 0), ez(0, 0, 1);
  std::vector<BatteryNet> nets;
  nets.push_back({"torus y=0", bumpy_torus, torus_line(*torus, {0.0, 0.0}, {1.0, 0.0}, 64)});
  nets.push_back({"torus y=1/2 x2", bumpy_torus, torus_line(*torus, {0.0, 0.5}, {1.0, 0.0}, 64, 2)});
  nets.push_back({"torus x=0", bumpy_torus, torus_line(*torus, {0.0, 0.0}, {0.0, 1.0}, 64)});
  nets.push_back({"torus x=1/2", bumpy_torus, torus_line(*torus, {0.5, 0.0}, {0.0, 1.0}, 64)});
  nets.push_back({"torus theta", bumpy_torus, torus_theta(*torus, 32)});
  nets.push_back({"sphere z=0", bumpy_sphere, great_circle(*sphere, ex, ey, 96)});
  nets.push_back({"sphere x=0", bumpy_sphere, great_circle(*sphere, ey, ez, 96)});
  nets.push_back({"sphere y=0", bumpy_sphere, great_circle(*sphere, ex, ez, 96)});
  nets.push_back({"sphere theta", bumpy_sphere, sphere_theta(*sphere, 48)});
  nets.push_back({"dumbbell neck", dumbbell_metric, parallel_loop(*dumbbell, prof.neck_position(), 64)});
  return nets;
}

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

std::vector<PerturbationDirection> battery_directions(const Metric& metric, const GammaNet& net, std::mt19937_64& rng) {
  const auto surface = metric.surface_ptr();
  const bool torus = surface->kind() == SurfaceKind::FlatTorus;
  const double scale = torus ? 2 * kPi : 1.0;  // torus embedding has radius 1/(2 pi)
  const int dim = torus ? 4 : 3;
  const auto& line = net.curve(0);
  const Eigen::VectorXd centre = surface->embed(line[line.size() / 3]);
  const double width = torus ? 0.05 : 0.4;

  std::vector<PerturbationDirection> dirs;
  dirs.push_back({conformal_tensor(metric, [](const SurfacePoint&) { return 1.0; }, 2.0), "conformal 1"});
  dirs.push_back({conformal_tensor(metric,
                                   ambient_field(surface, [scale](const Eigen::VectorXd& x) {
                                     const Eigen::VectorXd y = scale * x;
                                     return std::sin(2 * y[0] + y[1]) + 0.5 * std::cos(3 * y[2]);
                                   }),
                                   2.0),
                  "conformal trig"});
  dirs.push_back({conformal_tensor(metric,
                                   ambient_field(surface, [centre, width](const Eigen::VectorXd& x) {
                                     return std::exp(-(x - centre).squaredNorm() / (width * width));
                                   }),
                                   2.0),
                  "conformal bump"});
  dirs.push_back({ambient_tensor(surface, random_symmetric(rng, dim),
                                 [](const SurfacePoint&) { return 1.0; }),
                  "ambient tensor"});
  dirs.push_back({ambient_tensor(surface, random_symmetric(rng, dim),
                                 ambient_field(surface, [scale](const Eigen::VectorXd& x) {
                                   return 1.0 + 0.5 * std::sin(scale * (x[0] + x[1]));
                                 })),
                  "weighted ambient tensor"});
  return dirs;
}

}  // namespace

std::vector<BatteryRow> variation_battery(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BatteryRow> rows;
  SolverOptions pre;
  pre.tolerance = 1e-9;
  pre.detect_degenerate_family = false;
  pre.mode = SolverMode::Critical;
  for (auto& item : battery_nets()) {
    // The initial nets sit near saddles; Newton first, then the safeguarded mode.
    SolveResult base = solve_stationary(item.net, item.metric, pre);
    if (base.status != SolverStatus::Converged) {
      SolverOptions fallback = pre;
      fallback.mode = SolverMode::Auto;
      base = solve_stationary(item.net, item.metric, fallback);
    }
    const auto dirs = battery_directions(item.metric, base.net, rng);
    for (const auto& dir : dirs) {
      BatteryRow row;
      row.net = item.name;
      row.direction = dir.tag;
      if (base.status != SolverStatus::Converged) {
        row.note = "initial solve " + to_string(base.status);
        rows.push_back(row);
        continue;
      }
      const FirstVariation fv = first_variation(base.net, item.metric, dir);
      row.analytic = fv.value;
      try {
        const TensorLineFamily fam(item.metric, dir.tensor);
        row.fd = fd_length_derivative(base.net, fam, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)).value;
        row.abs_error = std::abs(row.analytic - row.fd);
        row.rel_error = row.abs_error / std::max(std::abs(row.analytic), 1e-12);
        row.pass = row.abs_error <= std::max(1e-6, 1e-4 * std::abs(row.analytic));
        if (!fv.stationary) row.note = "net not stationary";
      } catch (const ApproximationFailure& ex) {
        row.note = ex.what();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace sgn
