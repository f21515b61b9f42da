#include "sgn/selftest.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "sgn/equidist.hpp"
#include "sgn/net.hpp"

namespace sgn {
namespace {

constexpr double kPi = std::numbers::pi;

SelfTestResult make(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value, tol, value <= tol, std::move(detail)};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Same loop traversed backwards and started at another sample.
GammaNet reverse_and_rotate(const GammaNet& net, const Surface& surface, int shift) {
  GammaNet out = net;
  for (int e = 0; e < out.edge_count(); ++e) {
    out.reverse_edge(e);
    auto& line = out.curves()[e];
    const auto& ed = out.graph().edge(e);
    if (ed.ends[0] != ed.ends[1]) continue;
    const std::size_t m = line.size() - 1;
    Polyline rot;
    for (std::size_t i = 0; i <= m; ++i) rot.push_back(line[(i + shift) % m]);
    line = rot;
    out.vertices()[ed.ends[0]] = line.front();
  }
  out.sync_endpoints(surface);
  return out;
}

}  // namespace

std::vector<SelfTestResult> invariance_suite(std::uint64_t seed) {
  std::vector<SelfTestResult> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  auto torus = make_flat_torus();
  auto sphere = make_round_sphere();
  auto dumbbell = make_dumbbell();
  const Metric mt(torus);
  const Metric ms(sphere);

  // Reparametrization of a straight torus geodesic: exact on a flat metric.
  {
    const GammaNet uniform = torus_line(*torus, {0.1, 0.2}, {3, 4}, 40);
    const GammaNet warped = param_loop(
        *torus, [](double t) { return Vec2(0.1 + 3 * (t + 0.1 * std::sin(2 * kPi * t) / (2 * kPi)), 0.2 + 4 * (t + 0.1 * std::sin(2 * kPi * t) / (2 * kPi))); },
        57);
    out.push_back(make("length reparametrization (torus)", rel(length(warped, mt), length(uniform, mt)), 1e-9));
  }

  // Orientation and base point of a loop under a non-trivial metric.
  {
    const Metric bumpy = ms.with_conformal(
        [sphere](const SurfacePoint& p) {
          const Eigen::VectorXd x = sphere->embed(p);
          return 0.3 * x[2] * x[2] + 0.2 * x[0];
        });
    const GammaNet loop = param_loop(
        *sphere, [](double t) { return Vec2(kPi / 2 + 0.3 * std::sin(2 * kPi * t), 2 * kPi * t); }, 64);
    const GammaNet other = reverse_and_rotate(loop, *sphere, 17);
    const ScalarField h = [sphere](const SurfacePoint& p) {
      const Eigen::VectorXd x = sphere->embed(p);
      return std::exp(x[0]) + x[1] * x[2];
    };
    out.push_back(make("length reparametrization (sphere)", rel(length(other, bumpy), length(loop, bumpy)), 1e-9));
    out.push_back(make("integral reparametrization (sphere)",
                       rel(integrate(other, h, bumpy), integrate(loop, h, bumpy)), 1e-9));
  }

  // Conformal scaling e^{2c} g multiplies lengths by e^c.
  {
    double worst = 0.0;
    const std::vector<std::pair<const Metric*, GammaNet>> cases = {
        {&mt, torus_line(*torus, {0.0, 0.3}, {1, 2}, 32)},
        {&ms, param_loop(*sphere, [](double t) { return Vec2(1.0 + 0.2 * std::cos(4 * kPi * t), 2 * kPi * t); }, 48)},
    };
    for (const auto& [m, net] : cases)
      for (double c : {-0.7, 0.3, 1.1}) {
        const double expect = std::exp(c) * length(net, *m);
        worst = std::max(worst, std::abs(length(net, m->scaled(c)) - expect) / expect);
      }
    out.push_back(make("conformal length law", worst, 1e-10));
  }

  // Multiplicity enters linearly: bitwise for powers of two, to rounding otherwise.
  {
    double worst = 0.0;
    const Metric bumpy = mt.with_conformal(
        [torus](const SurfacePoint& p) { return 0.2 * std::cos(2 * kPi * torus->param(p)[1]); });
    const GammaNet one = torus_line(*torus, {0.25, 0.0}, {1, 1}, 30, 1);
    const double base = length(one, bumpy);
    for (int n : {2, 4, 8}) {
      const double many = length(torus_line(*torus, {0.25, 0.0}, {1, 1}, 30, n), bumpy);
      if (many != n * base) worst = std::max(worst, std::abs(many - n * base) / (n * base));
    }
    const double three = length(torus_line(*torus, {0.25, 0.0}, {1, 1}, 30, 3), bumpy);
    const double defect3 = std::abs(three - 3.0 * base) / (3.0 * base);
    SelfTestResult r = make("multiplicity linearity", worst, 0.0, "n = 3 relative defect " + std::to_string(defect3));
    r.pass = r.pass && defect3 <= 4 * std::numeric_limits<double>::epsilon();
    out.push_back(r);
  }

  // Partition of unity on the three surfaces.
  {
    double worst = 0.0;
    // The dumbbell uses a coarse configured bound; normalization does not depend on it.
    Metric md(dumbbell);
    md.set_injectivity_bound(1.0);
    const std::vector<std::pair<Metric, double>> systems = {{mt, 0.3}, {ms, 0.8}, {md, 0.9}};
    for (const auto& [m, eps] : systems) {
      const BumpSystem b = build_partition(m, eps, 4);
      const Surface& s = m.surface();
      const Vec2 ext = s.param_extent();
      for (int i = 0; i < 400; ++i) {
        const SurfacePoint p = s.from_param({ext[0] * U(rng), ext[1] * U(rng)});
        worst = std::max(worst, std::abs(b.psi_all(p).sum() - 1.0));
      }
    }
    out.push_back(make("partition of unity", worst, 1e-10));
  }

  // Derived metrics stay symmetric positive definite.
  {
    double min_eig = 1e300;
    double asym = 0.0;
    Eigen::Matrix3d a;
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = 2.0 * U(rng) - 1.0;
    a = 0.05 * (a * a.transpose());
    const std::vector<std::pair<std::shared_ptr<const Surface>, Metric>> metrics = {
        {torus, mt.with_conformal([torus](const SurfacePoint& p) { return 0.5 * std::sin(2 * kPi * torus->param(p)[0]); }, 1.3)},
        {sphere, ms.with_tensor(ambient_tensor(sphere, a, [](const SurfacePoint&) { return 1.0; })).scaled(-0.4)},
        {dumbbell, Metric(dumbbell).with_conformal([dumbbell](const SurfacePoint& p) { return 0.4 * dumbbell->embed(p)[2]; }, 0.5)},
    };
    for (const auto& [s, m] : metrics) {
      const Vec2 ext = s->param_extent();
      for (int i = 0; i < 500; ++i) {
        const SurfacePoint p = s->from_param({ext[0] * U(rng), ext[1] * U(rng)});
        const Mat2 g = m.eval(p);
        asym = std::max(asym, std::abs(g(0, 1) - g(1, 0)));
        min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat2>(g).eigenvalues()[0]);
      }
    }
    SelfTestResult r = make("SPD preservation", asym, 1e-14, "min eigenvalue " + std::to_string(min_eig));
    r.pass = r.pass && min_eig > 0.0;
    out.push_back(r);
  }
  return out;
}

}  // namespace sgn
