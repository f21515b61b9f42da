#include "sgn/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgn/errors.hpp"
#include "sgn/length_model.hpp"

namespace sgn {
namespace {

double christoffel_defect(const Metric& metric, const Polyline& line) {
  const Surface& surface = metric.surface();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < line.size(); ++i) {
    const SurfacePoint& p = line[i];
    const Vec2 a = surface.lift_near(line[i - 1], p);
    const Vec2 b = surface.lift_near(line[i + 1], p);
    const double ha = segment_length(metric, line[i - 1], p);
    const double hb = segment_length(metric, p, line[i + 1]);
    // arclength parameter with unequal spacing
    const Vec2 vel = (b - a) / (ha + hb);
    const Vec2 acc = 2.0 * ((b - p.x) / hb - (p.x - a) / ha) / (ha + hb);
    const Vec2 defect = acc + metric.christoffel_contract(p, vel);
    const Mat2 g = metric.tensor(p);
    const double speed2 = vel.dot(g * vel);
    // normal part only
    const Vec2 normal = defect - (vel.dot(g * defect) / speed2) * vel;
    worst = std::max(worst, std::sqrt(std::max(0.0, normal.dot(g * normal))) / speed2);
  }
  return worst;
}

}  // namespace

StationarityReport stationarity_residual(const GammaNet& net, const Metric& metric) {
  StationarityReport r;
  const auto lens = length_report(net, metric);
  if (!lens.degenerate_edges.empty()) throw DegenerateNet("net has a zero-length edge");
  r.length = lens.total;
  r.min_edge_length = lens.edge_lengths.empty() ? 0.0 : *std::min_element(lens.edge_lengths.begin(), lens.edge_lengths.end());

  LengthModel model(metric, net);
  const auto grad = model.gradient();
  const Eigen::VectorXd red = model.reduced_gradient(grad);
  const Eigen::VectorXd mass = model.lumped_mass();
  r.total_first_variation_norm = red.norm();
  const auto& g = net.graph();
  for (int i = 0; i < model.node_count(); ++i) {
    const int w = model.dof_width(i);
    const auto& node = model.node(i);
    if (node.vertex < 0) {
      const double m = mass[model.dof_offset(i)];
      r.edge_residual = std::max(r.edge_residual, std::abs(red[model.dof_offset(i)]) / m);
    } else if (w == 1) {
      r.vertex_residual = std::max(r.vertex_residual, std::abs(red[model.dof_offset(i)]));
    } else if (g.degree(node.vertex) > 0) {
      const Mat2 gm = metric.tensor(node.p);
      const double v = std::sqrt(std::max(0.0, grad[i].dot(gm.inverse() * grad[i])));
      r.vertex_residual = std::max(r.vertex_residual, v);
    }
  }
  for (const auto& line : net.curves()) r.geodesic_defect = std::max(r.geodesic_defect, christoffel_defect(metric, line));
  return r;
}

}  // namespace sgn
