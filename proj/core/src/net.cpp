#include "sgn/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sgn/errors.hpp"

namespace sgn {

GammaNet::GammaNet(WeightedMultigraph graph, std::vector<SurfacePoint> vertices, std::vector<Polyline> curves)
    : graph_(std::move(graph)), vertices_(std::move(vertices)), curves_(std::move(curves)) {
  graph_.validate();
  if (static_cast<int>(vertices_.size()) != graph_.vertex_count())
    throw StructuralError("vertex position count does not match the graph");
  if (static_cast<int>(curves_.size()) != graph_.edge_count())
    throw StructuralError("edge curve count does not match the graph");
  for (const auto& c : curves_)
    if (c.size() < 2) throw StructuralError("edge polyline needs at least two samples");
}

int GammaNet::sample_count() const {
  int n = 0;
  for (const auto& c : curves_) n += static_cast<int>(c.size());
  return n;
}

void GammaNet::sync_endpoints(const Surface& surface) {
  for (int e = 0; e < edge_count(); ++e) {
    auto& c = curves_[e];
    const auto& ends = graph_.edge(e).ends;
    for (int i = 0; i < 2; ++i) {
      const SurfacePoint& v = vertices_[ends[i]];
      SurfacePoint& slot = i == 0 ? c.front() : c.back();
      const SurfacePoint& nb = i == 0 ? c[1] : c[c.size() - 2];
      if (v.chart == nb.chart) {
        slot = {v.chart, surface.lift_near(v, nb)};
      } else {
        slot = v;
      }
    }
  }
}

void GammaNet::validate(const Surface& surface, double tol) const {
  for (int e = 0; e < edge_count(); ++e) {
    const auto& c = curves_[e];
    const auto& ends = graph_.edge(e).ends;
    if (!surface.same_point(c.front(), vertices_[ends[0]], tol) ||
        !surface.same_point(c.back(), vertices_[ends[1]], tol))
      throw StructuralError("edge endpoints do not match their vertices");
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (surface.same_point(c[i], c[i + 1], 0.0)) throw StructuralError("consecutive samples coincide");
  }
}

void GammaNet::reverse_edge(int e) {
  graph_.reverse_edge(e);
  std::reverse(curves_[e].begin(), curves_[e].end());
}

// ------------------------------------------------------------- constructors

Polyline sample_edge(const Surface& surface, const std::function<SurfacePoint(double)>& fn, int n) {
  if (n < 1) throw DomainError("edge needs at least one segment");
  Polyline line;
  line.reserve(n + 1);
  for (int k = 0; k <= n; ++k) line.push_back(fn(static_cast<double>(k) / n));
  // keep consecutive samples in continuous lifts where charts agree
  for (int k = 1; k <= n; ++k) {
    if (line[k].chart == line[k - 1].chart) line[k].x = surface.lift_near(line[k], line[k - 1]);
  }
  return line;
}

GammaNet loop_net(const Surface& surface, const std::function<SurfacePoint(double)>& fn, int n,
                  int multiplicity) {
  WeightedMultigraph g(1);
  g.add_edge(0, 0, multiplicity);
  Polyline line = sample_edge(surface, fn, n);
  const SurfacePoint v = line.front();
  GammaNet net(std::move(g), {v}, {std::move(line)});
  return net;
}

GammaNet param_loop(const Surface& surface, const std::function<Vec2(double)>& u, int n, int multiplicity) {
  return loop_net(
      surface, [&](double t) { return surface.from_param(u(t)); }, n, multiplicity);
}

GammaNet torus_line(const Surface& surface, const Vec2& start, const Vec2& period, int n, int multiplicity) {
  if (surface.kind() != SurfaceKind::FlatTorus) throw DomainError("torus_line needs a flat torus");
  return loop_net(
      surface, [&](double t) { return SurfacePoint{0, start + t * period}; }, n, multiplicity);
}

GammaNet parallel_loop(const Surface& surface, double s, int n, int multiplicity) {
  if (surface.kind() == SurfaceKind::FlatTorus) throw DomainError("parallel_loop needs a surface of revolution");
  return param_loop(
      surface, [&](double t) { return Vec2(s, 2.0 * std::numbers::pi * t); }, n, multiplicity);
}

GammaNet disjoint_union(const std::vector<GammaNet>& nets) {
  WeightedMultigraph g;
  std::vector<SurfacePoint> verts;
  std::vector<Polyline> curves;
  for (const auto& net : nets) {
    const int base = g.vertex_count();
    for (int v = 0; v < net.graph().vertex_count(); ++v) g.add_vertex();
    for (const auto& e : net.graph().edges()) g.add_edge(base + e.ends[0], base + e.ends[1], e.multiplicity);
    verts.insert(verts.end(), net.vertices().begin(), net.vertices().end());
    curves.insert(curves.end(), net.curves().begin(), net.curves().end());
  }
  return GammaNet(std::move(g), std::move(verts), std::move(curves));
}

// ------------------------------------------------------ length and integrals

int segment_chart(const SurfacePoint& a, const SurfacePoint& b) {
  return a.chart == b.chart ? a.chart : std::min(a.chart, b.chart);
}

std::pair<Vec2, Vec2> segment_coords(const Surface& surface, const SurfacePoint& a, const SurfacePoint& b) {
  const int c = segment_chart(a, b);
  const Vec2 pa = a.chart == c ? a.x : surface.to_chart(a, c);
  const Vec2 pb = surface.lift_near(b, SurfacePoint{c, pa});
  return {pa, pb};
}

double segment_length(const Metric& metric, const SurfacePoint& a, const SurfacePoint& b) {
  const int c = segment_chart(a, b);
  const auto [pa, pb] = segment_coords(metric.surface(), a, b);
  const Vec2 d = pb - pa;
  const double sa = std::sqrt(d.dot(metric.tensor({c, pa}) * d));
  const double sb = std::sqrt(d.dot(metric.tensor({c, pb}) * d));
  return 0.5 * (sa + sb);
}

double polyline_length(const Metric& metric, const Polyline& line) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) s += segment_length(metric, line[i], line[i + 1]);
  return s;
}

double edge_length(const GammaNet& net, const Metric& metric, int e) {
  return polyline_length(metric, net.curve(e));
}

LengthReport length_report(const GammaNet& net, const Metric& metric) {
  LengthReport r;
  for (int e = 0; e < net.edge_count(); ++e) {
    const double l = edge_length(net, metric, e);
    r.edge_lengths.push_back(l);
    if (!(l > 0.0)) {
      r.degenerate_edges.push_back(e);
      continue;
    }
    r.total += net.multiplicity(e) * l;
  }
  return r;
}

double length(const GammaNet& net, const Metric& metric) { return length_report(net, metric).total; }

double integrate(const GammaNet& net, const ScalarField& h, const Metric& metric) {
  double total = 0.0;
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& line = net.curve(e);
    double acc = 0.0;
    double ha = h(line[0]);
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      const int c = segment_chart(line[i], line[i + 1]);
      const auto [pa, pb] = segment_coords(metric.surface(), line[i], line[i + 1]);
      const Vec2 d = pb - pa;
      const double sa = std::sqrt(d.dot(metric.tensor({c, pa}) * d));
      const double sb = std::sqrt(d.dot(metric.tensor({c, pb}) * d));
      const double hb = h(line[i + 1]);
      acc += 0.5 * (ha * sa + hb * sb);
      ha = hb;
    }
    total += net.multiplicity(e) * acc;
  }
  return total;
}

double average_integral(const GammaNet& net, const ScalarField& h, const Metric& metric) {
  const double l = length(net, metric);
  if (!(l > 0.0)) throw DegenerateNet("average integral over a net of zero length");
  return integrate(net, h, metric) / l;
}

Vec2 sample_tangent(const Surface& surface, const Polyline& line, std::size_t i) {
  const std::size_t n = line.size();
  const SurfacePoint& p = line[i];
  auto at = [&](std::size_t k) { return surface.lift_near(line[k], p); };
  if (n == 2) return at(1) - at(0);
  if (i == 0) return 0.5 * (-3.0 * p.x + 4.0 * at(1) - at(2));
  if (i == n - 1) return 0.5 * (3.0 * p.x - 4.0 * at(n - 2) + at(n - 3));
  return 0.5 * (at(i + 1) - at(i - 1));
}

std::vector<std::vector<double>> trace_along(const GammaNet& net, const TensorField& t, const Metric& metric) {
  std::vector<std::vector<double>> out;
  for (const auto& line : net.curves()) {
    std::vector<double> vals;
    vals.reserve(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
      const Vec2 v = sample_tangent(metric.surface(), line, i);
      const double g = v.dot(metric.tensor(line[i]) * v);
      if (!(g > 0.0)) throw DegenerateNet("zero tangent along net");
      vals.push_back(v.dot(t(line[i]) * v) / g);
    }
    out.push_back(std::move(vals));
  }
  return out;
}

// ---------------------------------------------------------------- resampling

Polyline resample_polyline(const Metric& metric, const Polyline& line, int n) {
  const Surface& surface = metric.surface();
  if (n <= 0) n = static_cast<int>(line.size()) - 1;
  std::vector<double> cum(line.size(), 0.0);
  for (std::size_t i = 0; i + 1 < line.size(); ++i) cum[i + 1] = cum[i] + segment_length(metric, line[i], line[i + 1]);
  const double total = cum.back();
  if (!(total > 0.0)) throw DegenerateNet("cannot resample a zero-length edge");
  Polyline out;
  out.reserve(n + 1);
  out.push_back(line.front());
  std::size_t seg = 0;
  for (int k = 1; k < n; ++k) {
    const double target = total * k / n;
    while (seg + 2 < line.size() && cum[seg + 1] < target) ++seg;
    const double span = cum[seg + 1] - cum[seg];
    const double f = span > 0.0 ? std::clamp((target - cum[seg]) / span, 0.0, 1.0) : 0.0;
    const int c = segment_chart(line[seg], line[seg + 1]);
    const auto [pa, pb] = segment_coords(surface, line[seg], line[seg + 1]);
    SurfacePoint q = surface.normalize({c, pa + f * (pb - pa)});
    if (q.chart == out.back().chart) q.x = surface.lift_near(q, out.back());
    out.push_back(q);
  }
  SurfacePoint last = line.back();
  if (last.chart == out.back().chart) last.x = surface.lift_near(last, out.back());
  out.push_back(last);
  return out;
}

GammaNet resample_uniform(const GammaNet& net, const Metric& metric, int n) {
  GammaNet out = net;
  for (int e = 0; e < net.edge_count(); ++e) out.curves()[e] = resample_polyline(metric, net.curve(e), n);
  out.set_arclength_uniform(true);
  return out;
}

GammaNet refine(const GammaNet& net, const Surface& surface) {
  GammaNet out = net;
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& line = net.curve(e);
    Polyline fine;
    fine.reserve(2 * line.size() - 1);
    fine.push_back(line.front());
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      const int c = segment_chart(line[i], line[i + 1]);
      const auto [pa, pb] = segment_coords(surface, line[i], line[i + 1]);
      SurfacePoint m{c, 0.5 * (pa + pb)};
      if (!surface.well_placed(m)) m = surface.normalize(m);
      if (m.chart == fine.back().chart) m.x = surface.lift_near(m, fine.back());
      fine.push_back(m);
      SurfacePoint nxt = line[i + 1];
      fine.push_back(nxt);
    }
    out.curves()[e] = std::move(fine);
  }
  out.set_arclength_uniform(false);
  return out;
}

int default_segments(const Metric& metric, double edge_len, int minimum) {
  const double cap = metric.injectivity_bound() / 10.0;
  return std::max(minimum, static_cast<int>(std::ceil(edge_len / cap)));
}

double max_segment_length(const GammaNet& net, const Metric& metric) {
  double m = 0.0;
  for (const auto& line : net.curves())
    for (std::size_t i = 0; i + 1 < line.size(); ++i) m = std::max(m, segment_length(metric, line[i], line[i + 1]));
  return m;
}

double hausdorff_distance(const GammaNet& a, const GammaNet& b, const Surface& surface) {
  auto embed_all = [&](const GammaNet& n) {
    std::vector<Eigen::VectorXd> pts;
    for (const auto& line : n.curves())
      for (const auto& p : line) pts.push_back(surface.embed(p));
    return pts;
  };
  const auto pa = embed_all(a);
  const auto pb = embed_all(b);
  if (pa.empty() && pb.empty()) return 0.0;
  if (pa.empty() || pb.empty()) return std::numeric_limits<double>::infinity();
  auto one_sided = [](const std::vector<Eigen::VectorXd>& x, const std::vector<Eigen::VectorXd>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(pa, pb), one_sided(pb, pa));
}

}  // namespace sgn
