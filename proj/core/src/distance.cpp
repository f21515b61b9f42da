#include "sgn/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include <Eigen/Eigenvalues>

#include "sgn/net.hpp"

namespace sgn {
namespace {

struct Mesh {
  int n = 0;
  bool periodic_s = false;
  std::vector<SurfacePoint> pts;
  int id(int i, int j) const { return i * n + j; }
};

Mesh build_mesh(const Surface& surface, int n) {
  Mesh m;
  m.n = n;
  m.periodic_s = surface.kind() == SurfaceKind::FlatTorus;
  const Vec2 ext = surface.param_extent();
  m.pts.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.pts.push_back(surface.from_param({(i + 0.5) * ext[0] / n, (j + 0.5) * ext[1] / n}));
  return m;
}

std::vector<int> mesh_neighbours(const Mesh& m, int node) {
  static const int offs[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},  {1, -1}, {-1, 1}, {-1, -1},
                                  {2, 1},  {2, -1}, {-2, 1}, {-2, -1}, {1, 2}, {1, -2}, {-1, 2}, {-1, -2}};
  const int i = node / m.n;
  const int j = node % m.n;
  std::vector<int> out;
  for (const auto& o : offs) {
    int a = i + o[0];
    const int b = ((j + o[1]) % m.n + m.n) % m.n;
    if (m.periodic_s) a = ((a % m.n) + m.n) % m.n;
    else if (a < 0 || a >= m.n) continue;
    out.push_back(m.id(a, b));
  }
  return out;
}

std::vector<int> nearest_nodes(const Surface& surface, const Mesh& m, const SurfacePoint& p) {
  const Vec2 ext = surface.param_extent();
  const Vec2 u = surface.param(p);
  const int i0 = static_cast<int>(std::floor(u[0] / ext[0] * m.n - 0.5));
  const int j0 = static_cast<int>(std::floor(u[1] / ext[1] * m.n - 0.5));
  std::vector<int> out;
  for (int di = -1; di <= 2; ++di)
    for (int dj = -1; dj <= 2; ++dj) {
      int a = i0 + di;
      const int b = ((j0 + dj) % m.n + m.n) % m.n;
      if (m.periodic_s) a = ((a % m.n) + m.n) % m.n;
      else if (a < 0 || a >= m.n) continue;
      out.push_back(m.id(a, b));
    }
  return out;
}

}  // namespace

DistanceResult geodesic_distance(const Metric& metric, const SurfacePoint& p, const SurfacePoint& q,
                                 const DistanceOptions& opts) {
  const Surface& surface = metric.surface();
  DistanceResult res;
  if (surface.same_point(p, q, 0.0)) {
    res.exact = true;
    return res;
  }
  const bool plain = metric.is_base() || (metric.constant_log_scale() != 0.0 &&
                                          metric.scaled(-metric.constant_log_scale()).is_base());
  if (plain && surface.distance_is_exact()) {
    res.value = std::exp(metric.constant_log_scale()) * surface.distance_bound(p, q);
    res.mesh_value = res.value;
    res.exact = true;
    return res;
  }

  // Dijkstra over the mesh plus the two endpoints (ids N and N + 1).
  const Mesh m = build_mesh(surface, opts.mesh);
  const int total = static_cast<int>(m.pts.size());
  const int src = total;
  const int dst = total + 1;
  auto point = [&](int id) -> const SurfacePoint& { return id == src ? p : id == dst ? q : m.pts[id]; };
  const auto near_p = nearest_nodes(surface, m, p);
  const auto near_q = nearest_nodes(surface, m, q);
  std::vector<double> dist(total + 2, std::numeric_limits<double>::infinity());
  std::vector<int> prev(total + 2, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == dst) break;
    std::vector<int> nb = u == src ? near_p : mesh_neighbours(m, u);
    if (u != src && std::find(near_q.begin(), near_q.end(), u) != near_q.end()) nb.push_back(dst);
    for (int v : nb) {
      const double w = segment_length(metric, point(u), point(v));
      if (d + w < dist[v]) {
        dist[v] = d + w;
        prev[v] = u;
        heap.push({dist[v], v});
      }
    }
  }
  res.mesh_value = dist[dst];
  std::vector<SurfacePoint> path;
  for (int v = dst; v >= 0; v = prev[v]) path.push_back(point(v));
  std::reverse(path.begin(), path.end());
  for (std::size_t k = 1; k < path.size(); ++k)
    if (path[k].chart == path[k - 1].chart) path[k].x = surface.lift_near(path[k], path[k - 1]);

  Polyline line = resample_polyline(metric, path, opts.path_samples);
  res.converged = false;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 1; i + 1 < line.size(); ++i) {
      const SurfacePoint& x = line[i];
      const Vec2 a = surface.lift_near(line[i - 1], x);
      const Vec2 b = surface.lift_near(line[i + 1], x);
      const Vec2 d = b - a;
      const SurfacePoint mid{x.chart, 0.5 * (a + b)};
      const Vec2 target = mid.x + 0.125 * metric.christoffel_contract(mid, d);
      change = std::max(change, (target - x.x).norm());
      line[i] = surface.normalize({x.chart, target});
    }
    if (change < opts.tolerance) {
      res.converged = true;
      break;
    }
  }
  res.value = res.converged ? polyline_length(metric, line) : res.mesh_value;
  return res;
}

DistanceBound::DistanceBound(const Metric& metric, int resolution) : metric_(&metric) {
  if (metric.is_base()) return;
  const Surface& surface = metric.surface();
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& node : surface.quadrature(resolution)) {
    const Mat2 g = metric.tensor(node.p);
    const Mat2 b = surface.tensor(node.p.chart, node.p.x);
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat2> es(g, b, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  factor_ = std::sqrt(std::max(0.0, lo));
}

double DistanceBound::operator()(const SurfacePoint& p, const SurfacePoint& q) const {
  return factor_ * metric_->surface().distance_bound(p, q);
}

}  // namespace sgn
