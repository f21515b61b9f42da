#pragma once

#include <functional>
#include <vector>

#include "sgn/graph.hpp"
#include "sgn/metric.hpp"

namespace sgn {

using Polyline = std::vector<SurfacePoint>;

// A graph mapped into a surface. Each edge is a polyline whose first and last
// samples are the images of its end vertices.
class GammaNet {
 public:
  GammaNet() = default;
  GammaNet(WeightedMultigraph graph, std::vector<SurfacePoint> vertices, std::vector<Polyline> curves);

  const WeightedMultigraph& graph() const { return graph_; }
  WeightedMultigraph& graph() { return graph_; }
  const std::vector<SurfacePoint>& vertices() const { return vertices_; }
  std::vector<SurfacePoint>& vertices() { return vertices_; }
  const std::vector<Polyline>& curves() const { return curves_; }
  std::vector<Polyline>& curves() { return curves_; }
  const Polyline& curve(int e) const { return curves_.at(e); }
  int multiplicity(int e) const { return graph_.edge(e).multiplicity; }

  bool empty() const { return curves_.empty(); }
  int edge_count() const { return static_cast<int>(curves_.size()); }
  int sample_count() const;

  bool arclength_uniform() const { return uniform_; }
  void set_arclength_uniform(bool u) { uniform_ = u; }

  // Copies vertex positions into the curve endpoints.
  void sync_endpoints(const Surface& surface);
  // Throws StructuralError on inconsistent endpoints or repeated samples.
  void validate(const Surface& surface, double tol = 1e-9) const;

  void reverse_edge(int e);

 private:
  WeightedMultigraph graph_;
  std::vector<SurfacePoint> vertices_;
  std::vector<Polyline> curves_;
  bool uniform_ = false;
};

// ------------------------------------------------------------- constructors

// Closed loop through samples fn(k / n), k = 0..n, of a map [0, 1] -> surface
// with fn(1) == fn(0). Points come back normalized to preferred charts.
GammaNet loop_net(const Surface& surface, const std::function<SurfacePoint(double)>& fn, int n,
                  int multiplicity = 1);
// Closed loop through global parameter coordinates u(tau).
GammaNet param_loop(const Surface& surface, const std::function<Vec2(double)>& u, int n,
                    int multiplicity = 1);
// Straight closed geodesic on a flat torus through `start` with integer
// translation `period`.
GammaNet torus_line(const Surface& surface, const Vec2& start, const Vec2& period, int n,
                    int multiplicity = 1);
// Parallel s = const on a surface of revolution.
GammaNet parallel_loop(const Surface& surface, double s, int n, int multiplicity = 1);
// Edge polyline through fn(k / n), k = 0..n.
Polyline sample_edge(const Surface& surface, const std::function<SurfacePoint(double)>& fn, int n);
GammaNet disjoint_union(const std::vector<GammaNet>& nets);

// ------------------------------------------------------ length and integrals

// Chart used for the segment between a and b.
int segment_chart(const SurfacePoint& a, const SurfacePoint& b);
// Coordinates of a and b in the segment chart, b lifted next to a.
std::pair<Vec2, Vec2> segment_coords(const Surface& surface, const SurfacePoint& a, const SurfacePoint& b);

// Trapezoid length: (|d|_{g(a)} + |d|_{g(b)}) / 2 with d = b - a in a common chart.
double segment_length(const Metric& metric, const SurfacePoint& a, const SurfacePoint& b);
double polyline_length(const Metric& metric, const Polyline& line);
double edge_length(const GammaNet& net, const Metric& metric, int e);

struct LengthReport {
  double total = 0.0;
  std::vector<double> edge_lengths;     // without multiplicity
  std::vector<int> degenerate_edges;    // zero length, contribute 0
};
LengthReport length_report(const GammaNet& net, const Metric& metric);
double length(const GammaNet& net, const Metric& metric);

// sum_E n(E) int_E h dL, trapezoid weights consistent with length().
double integrate(const GammaNet& net, const ScalarField& h, const Metric& metric);
double average_integral(const GammaNet& net, const ScalarField& h, const Metric& metric);

// T(u, u) with u the g-unit tangent at every sample (per edge).
std::vector<std::vector<double>> trace_along(const GammaNet& net, const TensorField& t, const Metric& metric);
// Chart tangent at sample i of an edge, in the chart of that sample.
Vec2 sample_tangent(const Surface& surface, const Polyline& line, std::size_t i);

// ---------------------------------------------------------------- resampling

// Arclength-uniform resampling with n segments per edge (n <= 0 keeps the
// current count). New samples lie on the old polyline.
GammaNet resample_uniform(const GammaNet& net, const Metric& metric, int n = 0);
Polyline resample_polyline(const Metric& metric, const Polyline& line, int n);
// Inserts chart midpoints into every segment.
GammaNet refine(const GammaNet& net, const Surface& surface);
// Segment count per edge so that segments stay below injectivity / 10.
int default_segments(const Metric& metric, double edge_len, int minimum = 16);

double max_segment_length(const GammaNet& net, const Metric& metric);

// Max over samples of the embedding distance to the nearest sample of the
// other net (symmetrized).
double hausdorff_distance(const GammaNet& a, const GammaNet& b, const Surface& surface);

}  // namespace sgn
