#include "sgn/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "sgn/distance.hpp"
#include "sgn/errors.hpp"

namespace sgn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Normalized arclength parameter of every sample of an edge.
std::vector<double> edge_params(const Metric& metric, const Polyline& line) {
  std::vector<double> tau(line.size(), 0.0);
  for (std::size_t i = 0; i + 1 < line.size(); ++i) tau[i + 1] = tau[i] + segment_length(metric, line[i], line[i + 1]);
  const double total = tau.back();
  if (total > 0.0)
    for (double& t : tau) t /= total;
  return tau;
}

bool is_closed_loop(const GammaNet& net, int e) {
  const auto& ed = net.graph().edge(e);
  return ed.ends[0] == ed.ends[1];
}

}  // namespace

Vec2 inward_tangent(const GammaNet& net, const Metric& metric, int edge, int end) {
  const Surface& surface = metric.surface();
  const auto& line = net.curve(edge);
  const std::size_t n = line.size();
  const SurfacePoint& p = end == 0 ? line.front() : line.back();
  auto at = [&](std::size_t k) { return surface.lift_near(line[end == 0 ? k : n - 1 - k], p); };
  Vec2 t = n >= 3 ? Vec2(0.5 * (-3.0 * p.x + 4.0 * at(1) - at(2))) : Vec2(at(1) - p.x);
  const double nn = metric.norm(p, t);
  if (!(nn > 0.0)) throw DegenerateNet("zero tangent at an edge end");
  return t / nn;
}

double f2_value(const GammaNet& net, const Metric& metric, const EdgeEnd& a, const EdgeEnd& b) {
  const Surface& surface = metric.surface();
  const auto& la = net.curve(a.first);
  const auto& lb = net.curve(b.first);
  const SurfacePoint& pa = a.second == 0 ? la.front() : la.back();
  const SurfacePoint& pb = b.second == 0 ? lb.front() : lb.back();
  const Vec2 ua = inward_tangent(net, metric, a.first, a.second);
  Vec2 ub = inward_tangent(net, metric, b.first, b.second);
  if (pa.chart != pb.chart) ub = surface.transition_jacobian(pb, pa.chart) * ub;
  return metric.inner(pa, ua, ub);
}

double c3_norm(const GammaNet& net, const Metric& metric) {
  const Surface& surface = metric.surface();
  double n0 = 0.0, n1 = 0.0, n2 = 0.0, n3 = 0.0;
  for (const auto& line : net.curves()) {
    const auto tau = edge_params(metric, line);
    std::vector<Eigen::VectorXd> pts;
    for (const auto& p : line) pts.push_back(surface.embed(p));
    const int n = static_cast<int>(pts.size());
    const int dim = static_cast<int>(pts[0].size());
    for (const auto& p : pts) n0 = std::max(n0, p.norm());
    if (n < 5) continue;
    for (int k = 0; k < n; ++k) {
      const int lo = std::clamp(k - 2, 0, n - 5);
      const double h = std::max(tau[lo + 4] - tau[lo], 1e-300) / 4.0;
      Eigen::Matrix<double, 5, 5> v;
      Eigen::MatrixXd rhs(5, dim);
      for (int r = 0; r < 5; ++r) {
        const double u = (tau[lo + r] - tau[k]) / h;
        double pw = 1.0;
        for (int c = 0; c < 5; ++c, pw *= u) v(r, c) = pw;
        rhs.row(r) = pts[lo + r].transpose();
      }
      const Eigen::MatrixXd coef = v.colPivHouseholderQr().solve(rhs);
      n1 = std::max(n1, coef.row(1).norm() / h);
      n2 = std::max(n2, 2.0 * coef.row(2).norm() / (h * h));
      n3 = std::max(n3, 6.0 * coef.row(3).norm() / (h * h * h));
    }
  }
  return n0 + n1 + n2 + n3;
}

EmbeddednessCertificate embeddedness_certificate(const GammaNet& net, const Metric& metric, int M_bound) {
  if (M_bound < 1) throw DomainError("certificate bound M must be a positive integer");
  EmbeddednessCertificate c;
  c.M_bound = M_bound;
  const double inv = 1.0 / M_bound;
  const double inj = metric.injectivity_bound();
  const DistanceBound dist(metric);
  const auto& g = net.graph();

  // F1: constant-speed parametrization on [0, 1] has speed = edge length.
  std::vector<double> lens;
  c.F1 = kInf;
  for (int e = 0; e < net.edge_count(); ++e) {
    lens.push_back(edge_length(net, metric, e));
    c.F1 = std::min(c.F1, lens.back());
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto inc = g.incidences(v);
    // The base point of a lone closed loop is not a junction.
    if (inc.size() == 2 && inc[0][0] == inc[1][0]) continue;
    for (std::size_t a = 0; a < inc.size(); ++a)
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        const EdgeEnd ea{inc[a][0], inc[a][1]};
        const EdgeEnd eb{inc[b][0], inc[b][1]};
        c.F2_values[{std::min(ea, eb), std::max(ea, eb)}] = f2_value(net, metric, ea, eb);
      }
  }

  std::vector<std::vector<double>> taus;
  for (const auto& line : net.curves()) taus.push_back(edge_params(metric, line));

  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& line = net.curve(e);
    const double w = inj / lens[e];
    const bool loop = is_closed_loop(net, e);
    double best = kInf;
    for (std::size_t i = 0; i < line.size(); ++i)
      for (std::size_t j = i + 1; j < line.size(); ++j) {
        double sep = std::abs(taus[e][i] - taus[e][j]);
        if (loop) sep = std::min(sep, 1.0 - sep);
        if (sep + 1e-12 < w) continue;
        best = std::min(best, dist(line[i], line[j]));
      }
    c.dE_min.push_back(best);
  }

  for (int e = 0; e < net.edge_count(); ++e) {
    for (int f = 0; f < net.edge_count(); ++f) {
      if (e == f) continue;
      const double we = inj / lens[e];
      const double wf = inj / lens[f];
      const auto& le = net.curve(e);
      const auto& lf = net.curve(f);
      double best = kInf;
      for (std::size_t i = 0; i < le.size(); ++i) {
        const double t = taus[e][i];
        // ends of f that must be avoided while t is near a shared vertex
        bool avoid[2] = {false, false};
        for (int j = 0; j < 2; ++j) {
          if (std::abs(t - j) > we) continue;
          for (int k = 0; k < 2; ++k)
            if (g.edge(f).ends[k] == g.edge(e).ends[j]) avoid[k] = true;
        }
        for (std::size_t k = 0; k < lf.size(); ++k) {
          const double s = taus[f][k];
          if ((avoid[0] && s + 1e-12 < wf) || (avoid[1] && 1.0 - s + 1e-12 < wf)) continue;
          best = std::min(best, dist(le[i], lf[k]));
        }
      }
      c.dEE_min[{e, f}] = best;
    }
  }

  c.C3_norm = c3_norm(net, metric);
  c.c3_norm_ok = c.C3_norm <= M_bound;
  c.immersion_ok = c.F1 >= inv;
  c.tangents_ok = std::all_of(c.F2_values.begin(), c.F2_values.end(),
                              [&](const auto& kv) { return kv.second <= 1.0 - inv; });
  c.edge_injective_ok = std::all_of(c.dE_min.begin(), c.dE_min.end(), [&](double d) { return d >= inv; });
  c.edges_disjoint_ok =
      std::all_of(c.dEE_min.begin(), c.dEE_min.end(), [&](const auto& kv) { return kv.second >= inv; });
  return c;
}

ClosedGeodesicResult closed_geodesic_certificate(const GammaNet& net, const Metric& metric,
                                                 const std::vector<EndPair>& r, double tol) {
  const auto& g = net.graph();
  std::map<EdgeEnd, EdgeEnd> partner;
  for (const auto& [a, b] : r) {
    for (const auto& x : {a, b})
      if (x.first < 0 || x.first >= g.edge_count() || (x.second != 0 && x.second != 1))
        throw StructuralError("relation references a missing edge end");
    if (a == b) throw StructuralError("relation pairs an edge end with itself");
    if (g.edge(a.first).ends[a.second] != g.edge(b.first).ends[b.second])
      throw StructuralError("related edge ends sit at different vertices");
    if (partner.count(a) || partner.count(b)) throw StructuralError("edge end used in two relations");
    partner[a] = b;
    partner[b] = a;
  }

  ClosedGeodesicResult res;
  for (int e = 0; e < g.edge_count(); ++e)
    for (int i = 0; i < 2; ++i)
      if (!partner.count({e, i})) {
        res.reason = "relations do not pair every edge end";
        return res;
      }

  for (const auto& [a, b] : r) {
    const Vec2 ua = inward_tangent(net, metric, a.first, a.second);
    Vec2 ub = inward_tangent(net, metric, b.first, b.second);
    const auto& la = net.curve(a.first);
    const auto& lb = net.curve(b.first);
    const SurfacePoint& pa = a.second == 0 ? la.front() : la.back();
    const SurfacePoint& pb = b.second == 0 ? lb.front() : lb.back();
    if (pa.chart != pb.chart) ub = metric.surface().transition_jacobian(pb, pa.chart) * ub;
    res.max_mismatch = std::max(res.max_mismatch, metric.norm(pa, ua + ub));
  }
  if (res.max_mismatch > tol) {
    res.reason = "related tangents do not match";
    return res;
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto inc = g.incidences(v);
    for (std::size_t a = 0; a < inc.size(); ++a)
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        const EdgeEnd ea{inc[a][0], inc[a][1]};
        const EdgeEnd eb{inc[b][0], inc[b][1]};
        if (partner[ea] == eb) continue;
        if (std::abs(f2_value(net, metric, ea, eb)) >= 1.0 - tol) {
          res.reason = "non-transverse self-intersection";
          return res;
        }
      }
  }

  std::set<int> used;
  for (int start = 0; start < g.edge_count(); ++start) {
    if (used.count(start)) continue;
    std::vector<std::pair<int, bool>> circle;
    std::set<std::pair<int, bool>> seen;
    int e = start;
    bool forward = true;
    while (true) {
      if (!seen.insert({e, forward}).second) throw StructuralError("relations do not close into circles");
      used.insert(e);
      circle.emplace_back(e, forward);
      const EdgeEnd exit{e, forward ? 1 : 0};
      const EdgeEnd entry = partner[exit];
      e = entry.first;
      forward = entry.second == 0;
      if (e == start && forward) break;
    }
    res.circles.push_back(std::move(circle));
  }
  res.ok = true;
  return res;
}

}  // namespace sgn
