#include <cmath>

#include "sgn/errors.hpp"
#include "sgn/minmax.hpp"

namespace sgn {
namespace {

// One half-sweep over the samples of parity `parity` of a closed polyline
// (last sample equal to the first).
void half_sweep(Polyline& line, const Metric& metric, int parity, double omega) {
  const Surface& surface = metric.surface();
  const std::size_t m = line.size() - 1;
  for (std::size_t i = parity; i < m; i += 2) {
    const SurfacePoint& x = line[i];
    const SurfacePoint& prev = line[(i + m - 1) % m];
    const SurfacePoint& next = line[(i + 1) % m];
    const Vec2 a = surface.lift_near(prev, x);
    const Vec2 b = surface.lift_near(next, x);
    const Vec2 d = b - a;
    const SurfacePoint mid{x.chart, 0.5 * (a + b)};
    const Vec2 target = mid.x + 0.125 * metric.christoffel_contract(mid, d);
    const SurfacePoint moved{x.chart, (1.0 - omega) * x.x + omega * target};
    if (!surface.in_domain(moved.chart, moved.x)) throw DomainError("shortening step left the chart domain");
    line[i] = surface.normalize(moved);
  }
  line[m] = line[0];
}

}  // namespace

ShortenResult birkhoff_shorten(const GammaNet& cycle, const Metric& metric, const ShortenOptions& opts) {
  const auto& g = cycle.graph();
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if (ed.ends[0] != ed.ends[1] || g.degree(ed.ends[0]) != 2)
      throw PreconditionError("shortening needs a union of closed loops");
    if (cycle.curve(e).size() < 4) throw PreconditionError("shortening needs at least three samples per loop");
  }

  ShortenResult res;
  res.net = cycle;
  res.initial_length = length(cycle, metric);
  const double floor = opts.collapse_factor * metric.injectivity_bound();
  double len = res.initial_length;

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    res.sweeps = sweep + 1;
    for (auto& line : res.net.curves()) {
      half_sweep(line, metric, 0, opts.relaxation);
      half_sweep(line, metric, 1, opts.relaxation);
    }
    const double next = length(res.net, metric);
    bool tiny = false;
    for (int e = 0; e < res.net.edge_count(); ++e) tiny = tiny || edge_length(res.net, metric, e) < floor;
    const double decrease = len - next;
    len = next;
    if (tiny) {
      res.collapsed = true;
      break;
    }
    if (decrease < opts.decrease_tolerance) break;
  }
  for (int e = 0; e < res.net.edge_count(); ++e) res.net.vertices()[g.edge(e).ends[0]] = res.net.curve(e).front();
  res.net.sync_endpoints(metric.surface());

  if (!res.collapsed && opts.polish) {
    SolverOptions so;
    so.tolerance = opts.polish_tolerance;
    so.detect_degenerate_family = false;
    const SolveResult r = solve_stationary(res.net, metric, so);
    if (r.status == SolverStatus::EdgeCollapse) {
      res.collapsed = true;
    } else if (r.report.length <= len + 1e-9) {
      res.net = r.net;
    }
  }
  res.length = length(res.net, metric);
  if (!res.collapsed) res.edge_residual = stationarity_residual(res.net, metric).edge_residual;
  return res;
}

}  // namespace sgn
