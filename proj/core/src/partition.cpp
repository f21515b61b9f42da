#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "sgn/equidist.hpp"
#include "sgn/errors.hpp"
#include "sgn/parallel.hpp"

namespace sgn {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double smootherstep(double v) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return v * v * v * (v * (6.0 * v - 15.0) + 10.0);
}

bool is_torus(const Surface& s) { return s.kind() == SurfaceKind::FlatTorus; }

// Periods of the global parameter coordinates (0 = not periodic).
Vec2 param_periods(const Surface& s) {
  if (is_torus(s)) return s.param_extent();
  return {0.0, kTwoPi};
}

}  // namespace

double plateau(double u, double lo, double hi, double collar, double period) {
  const double half = 0.5 * (hi - lo);
  double d = u - 0.5 * (lo + hi);
  if (period > 0.0) {
    if (hi - lo >= period) return 1.0;
    d -= period * std::round(d / period);
  }
  const double out = std::abs(d) - half;
  if (out <= 0.0) return 1.0;
  if (!(collar > 0.0)) return 0.0;
  return smootherstep(1.0 - out / collar);
}

BumpSystem::BumpSystem(std::shared_ptr<const Surface> surface, std::vector<BumpCell> cells, double eps1)
    : surface_(std::move(surface)), cells_(std::move(cells)), eps1_(eps1) {
  if (cells_.empty()) throw StructuralError("bump system needs at least one cell");
  period_ = param_periods(*surface_);
}

double BumpSystem::phi(int k, const SurfacePoint& p) const {
  const BumpCell& c = cells_.at(k);
  const Vec2 u = surface_->param(p);
  const double a = plateau(u[0], c.lo[0], c.hi[0], c.collar[0], period_[0]);
  if (c.full_angle || a == 0.0) return a;
  return a * plateau(u[1], c.lo[1], c.hi[1], c.collar[1], period_[1]);
}

Eigen::VectorXd BumpSystem::phi_all(const SurfacePoint& p) const {
  Eigen::VectorXd out(size());
  const Vec2 u = surface_->param(p);
  for (int k = 0; k < size(); ++k) {
    const BumpCell& c = cells_[k];
    double a = plateau(u[0], c.lo[0], c.hi[0], c.collar[0], period_[0]);
    if (!c.full_angle && a != 0.0) a *= plateau(u[1], c.lo[1], c.hi[1], c.collar[1], period_[1]);
    out[k] = a;
  }
  return out;
}

Eigen::VectorXd BumpSystem::psi_all(const SurfacePoint& p) const {
  Eigen::VectorXd phis = phi_all(p);
  const double total = phis.sum();
  if (!(total > 0.0)) throw DomainError("point not covered by the bump system");
  return phis / total;
}

int BumpSystem::cell_of(const SurfacePoint& p) const {
  const Vec2 u = surface_->param(p);
  for (int k = 0; k < size(); ++k) {
    const BumpCell& c = cells_[k];
    const bool in0 = u[0] >= c.lo[0] && (u[0] < c.hi[0] || (period_[0] == 0.0 && u[0] == c.hi[0]));
    if (!in0) continue;
    if (c.full_angle || (u[1] >= c.lo[1] && u[1] < c.hi[1])) return k;
  }
  return -1;
}

std::string BumpSystem::to_json() const {
  nlohmann::json j;
  j["format"] = "sgn-bumps";
  j["version"] = 1;
  j["surface"] = to_string(surface_->kind());
  j["eps1"] = eps1_;
  j["K"] = size();
  j["max_cell_diameter"] = max_diameter_;
  j["max_enlarged_radius"] = max_radius_;
  auto& arr = j["cells"] = nlohmann::json::array();
  for (const auto& c : cells_)
    arr.push_back({{"lo", {c.lo[0], c.lo[1]}},
                   {"hi", {c.hi[0], c.hi[1]}},
                   {"collar", {c.collar[0], c.collar[1]}},
                   {"full_angle", c.full_angle}});
  return j.dump(2);
}

double distance_upper_bound(const Metric& metric, const SurfacePoint& p, const SurfacePoint& q) {
  const Surface& s = metric.surface();
  if (metric.is_base() && s.distance_is_exact()) return s.distance_bound(p, q);
  Vec2 u = s.param(p);
  Vec2 v = s.param(q);
  const Vec2 per = param_periods(s);
  if (!is_torus(s)) {
    const double total = s.param_extent()[0];
    if (u[0] <= 0.0 || u[0] >= total) u[1] = v[1];
    if (v[0] <= 0.0 || v[0] >= total) v[1] = u[1];
  }
  Vec2 d = v - u;
  for (int i = 0; i < 2; ++i)
    if (per[i] > 0.0) d[i] -= per[i] * std::round(d[i] / per[i]);
  constexpr int kSteps = 32;
  Polyline line;
  for (int i = 0; i <= kSteps; ++i) {
    Vec2 w = u + d * (static_cast<double>(i) / kSteps);
    if (per[1] > 0.0) w[1] -= per[1] * std::floor(w[1] / per[1]);
    if (per[0] > 0.0) w[0] -= per[0] * std::floor(w[0] / per[0]);
    line.push_back(s.from_param(w));
  }
  return polyline_length(metric, line);
}

namespace {

std::vector<BumpCell> torus_cells(const Surface& s, int n, double frac) {
  const Vec2 ext = s.param_extent();
  std::vector<BumpCell> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      BumpCell c;
      c.lo = Vec2(ext[0] * i / n, ext[1] * j / n);
      c.hi = Vec2(ext[0] * (i + 1) / n, ext[1] * (j + 1) / n);
      c.collar = frac * (c.hi - c.lo);
      c.centre = s.from_param(0.5 * (c.lo + c.hi));
      cells.push_back(c);
    }
  return cells;
}

std::vector<BumpCell> revolution_cells(const RevolutionSurface& s, int n, double frac) {
  const double total = s.profile().length();
  const double h = total / n;
  std::vector<BumpCell> cells;
  for (int i = 0; i < n; ++i) {
    const double s0 = h * i;
    const double s1 = i == n - 1 ? total : h * (i + 1);
    if (i == 0 || i == n - 1) {
      BumpCell c;
      c.lo = Vec2(s0, 0.0);
      c.hi = Vec2(s1, kTwoPi);
      c.collar = Vec2(frac * (s1 - s0), 0.0);
      c.full_angle = true;
      c.centre = s.from_param({i == 0 ? 0.0 : total, 0.0});
      cells.push_back(c);
      continue;
    }
    double rmax = 0.0;
    for (int k = 0; k <= 8; ++k) rmax = std::max(rmax, s.profile().r(s0 + (s1 - s0) * k / 8.0));
    const int q = std::max(3, static_cast<int>(std::ceil(kTwoPi * rmax / h)));
    for (int j = 0; j < q; ++j) {
      BumpCell c;
      c.lo = Vec2(s0, kTwoPi * j / q);
      c.hi = Vec2(s1, kTwoPi * (j + 1) / q);
      c.collar = frac * (c.hi - c.lo);
      c.centre = s.from_param(0.5 * (c.lo + c.hi));
      cells.push_back(c);
    }
  }
  return cells;
}

// Sample points on a closed parameter rectangle (clamped in s for surfaces of
// revolution).
std::vector<SurfacePoint> rect_samples(const Surface& s, const Vec2& lo, const Vec2& hi, int m) {
  std::vector<SurfacePoint> out;
  const Vec2 per = param_periods(s);
  const double total = is_torus(s) ? 0.0 : s.param_extent()[0];
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b) {
      Vec2 u = lo + Vec2((hi[0] - lo[0]) * a / m, (hi[1] - lo[1]) * b / m);
      if (!is_torus(s)) u[0] = std::clamp(u[0], 0.0, total);
      for (int i = 0; i < 2; ++i)
        if (per[i] > 0.0) u[i] -= per[i] * std::floor(u[i] / per[i]);
      out.push_back(s.from_param(u));
    }
  return out;
}

}  // namespace

BumpSystem build_partition(const Metric& metric, double eps1, int K_min, double collar_fraction,
                           int max_cells_per_side) {
  const auto surface = metric.surface_ptr();
  if (!(eps1 > 0.0) || eps1 >= metric.injectivity_bound())
    throw DomainError("eps1 must lie in (0, injectivity bound)");
  if (K_min < 1) throw DomainError("K_min must be positive");
  const bool torus = is_torus(*surface);
  const auto rev = std::dynamic_pointer_cast<const RevolutionSurface>(surface);
  if (!torus && !rev) throw DomainError("unsupported surface for partitions");

  int n = std::max(torus ? 1 : 3, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(K_min)) - 1e-12)));
  for (; n <= max_cells_per_side; ++n) {
    auto cells = torus ? torus_cells(*surface, n, collar_fraction) : revolution_cells(*rev, n, collar_fraction);
    if (static_cast<int>(cells.size()) < K_min) continue;
    std::vector<double> diam(cells.size(), 0.0), rad(cells.size(), 0.0);
    parallel_for(cells.size(), [&](std::size_t k) {
      const BumpCell& c = cells[k];
      const Vec2 lo = c.lo;
      const Vec2 hi = c.hi;
      const auto pts = rect_samples(*surface, lo, hi, 4);
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
          diam[k] = std::max(diam[k], distance_upper_bound(metric, pts[a], pts[b]));
      const Vec2 glo = lo - c.collar;
      const Vec2 ghi = hi + c.collar;
      for (const auto& p : rect_samples(*surface, glo, ghi, 6))
        rad[k] = std::max(rad[k], distance_upper_bound(metric, c.centre, p));
    });
    const double dmax = *std::max_element(diam.begin(), diam.end());
    const double rmax = *std::max_element(rad.begin(), rad.end());
    if (dmax <= eps1 && rmax <= eps1) {
      BumpSystem sys(surface, std::move(cells), eps1);
      sys.set_geometry_bounds(dmax, rmax);
      return sys;
    }
  }
  throw ApproximationFailure("eps1 too small for the partition budget");
}

}  // namespace sgn
