#include "sgn/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace sgn {
namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

GammaNet torus_theta(const Surface& surface, int n, const Vec2& v0) {
  // Edge vectors (x, x), (x - 1, x), (x, x - 1) meet at 120 degrees when
  // 6x^2 - 6x + 1 = 0.
  const double x = (3.0 - std::sqrt(3.0)) / 6.0;
  const std::array<Vec2, 3> edges{Vec2(x, x), Vec2(x - 1.0, x), Vec2(x, x - 1.0)};
  WeightedMultigraph g(2);
  std::vector<Polyline> curves;
  for (const auto& d : edges) {
    g.add_edge(0, 1);
    curves.push_back(sample_edge(surface, [&](double s) { return SurfacePoint{0, v0 + s * d}; }, n));
  }
  return GammaNet(g, {SurfacePoint{0, v0}, SurfacePoint{0, v0 + edges[0]}}, curves);
}

SurfacePoint sphere_point(const Surface& surface, const Eigen::Vector3d& x) {
  const double s = std::acos(std::clamp(-x.z(), -1.0, 1.0));
  const double th = std::atan2(x.y(), x.x());
  return surface.from_param({s, th < 0.0 ? th + 2 * kPi : th});
}

GammaNet great_circle(const Surface& surface, const Eigen::Vector3d& a, const Eigen::Vector3d& b, int n) {
  return loop_net(surface, [&](double s) {
    return sphere_point(surface, std::cos(2 * kPi * s) * a + std::sin(2 * kPi * s) * b);
  }, n);
}

GammaNet sphere_theta(const Surface& surface, int n) {
  WeightedMultigraph g(2);
  std::vector<Polyline> curves;
  for (double deg : {90.0, 210.0, 330.0}) {
    const double th = deg * kPi / 180.0;
    g.add_edge(0, 1);
    curves.push_back(sample_edge(surface, [&](double s) { return surface.from_param({kPi * s, th}); }, n));
  }
  return GammaNet(g, {surface.from_param({0.0, 0.0}), surface.from_param({kPi, 0.0})}, curves);
}

}  // namespace sgn
