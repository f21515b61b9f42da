#include "sgn/length_model.hpp"

#include <cmath>

#include "sgn/errors.hpp"

namespace sgn {

LengthModel::LengthModel(const Metric& metric, const GammaNet& net) : metric_(&metric), net_(net) {
  const auto& g = net_.graph();
  for (int v = 0; v < g.vertex_count(); ++v) nodes_.push_back({v, -1, -1, net_.vertices()[v]});
  edge_first_node_.resize(net_.edge_count());
  for (int e = 0; e < net_.edge_count(); ++e) {
    const auto& line = net_.curve(e);
    edge_first_node_[e] = node_count();
    for (std::size_t k = 1; k + 1 < line.size(); ++k) nodes_.push_back({-1, e, static_cast<int>(k), line[k]});
  }
  incident_.assign(nodes_.size(), {});
  for (int e = 0; e < net_.edge_count(); ++e) {
    const int n = static_cast<int>(net_.curve(e).size());
    for (int k = 0; k + 1 < n; ++k) {
      Segment s{sample_node(e, k), sample_node(e, k + 1), e, static_cast<double>(net_.multiplicity(e))};
      incident_[s.a].push_back(static_cast<int>(segments_.size()));
      if (s.b != s.a) incident_[s.b].push_back(static_cast<int>(segments_.size()));
      segments_.push_back(s);
    }
  }
  build_frames();
}

int LengthModel::sample_node(int e, int k) const {
  const int n = static_cast<int>(net_.curve(e).size());
  if (k == 0) return net_.graph().edge(e).ends[0];
  if (k == n - 1) return net_.graph().edge(e).ends[1];
  return edge_first_node_[e] + k - 1;
}

double LengthModel::segment_length(int s) const {
  const auto& seg = segments_[s];
  return ::sgn::segment_length(*metric_, nodes_[seg.a].p, nodes_[seg.b].p);
}

double LengthModel::length() const {
  double total = 0.0;
  for (int s = 0; s < static_cast<int>(segments_.size()); ++s) total += segments_[s].weight * segment_length(s);
  return total;
}

std::pair<Vec2, Vec2> LengthModel::segment_gradient(int s, int override_node,
                                                    const SurfacePoint* override_point) const {
  const auto& seg = segments_[s];
  const SurfacePoint& a = (seg.a == override_node && override_point) ? *override_point : nodes_[seg.a].p;
  const SurfacePoint& b = (seg.b == override_node && override_point) ? *override_point : nodes_[seg.b].p;
  const Surface& surface = metric_->surface();
  const int c = segment_chart(a, b);
  const auto [pa, pb] = segment_coords(surface, a, b);
  const Vec2 d = pb - pa;
  const SurfacePoint qa{c, pa};
  const SurfacePoint qb{c, pb};
  const Mat2 ga = metric_->tensor(qa);
  const Mat2 gb = metric_->tensor(qb);
  const double sa = std::sqrt(d.dot(ga * d));
  const double sb = std::sqrt(d.dot(gb * d));
  if (!(sa > 0.0) || !(sb > 0.0)) return {Vec2::Zero(), Vec2::Zero()};
  const auto dga = metric_->derivative(qa);
  const auto dgb = metric_->derivative(qb);
  const Vec2 ka(d.dot(dga[0] * d), d.dot(dga[1] * d));
  const Vec2 kb(d.dot(dgb[0] * d), d.dot(dgb[1] * d));
  // l = (sa + sb) / 2
  Vec2 grad_a = 0.5 * ((-ga * d + 0.5 * ka) / sa - gb * d / sb);
  Vec2 grad_b = 0.5 * (ga * d / sa + (gb * d + 0.5 * kb) / sb);
  if (a.chart != c) grad_a = surface.transition_jacobian(a, c).transpose() * grad_a;
  if (b.chart != c) grad_b = surface.transition_jacobian(b, c).transpose() * grad_b;
  return {seg.weight * grad_a, seg.weight * grad_b};
}

std::vector<Vec2> LengthModel::gradient() const {
  std::vector<Vec2> g(nodes_.size(), Vec2::Zero());
  for (int s = 0; s < static_cast<int>(segments_.size()); ++s) {
    const auto [ga, gb] = segment_gradient(s);
    g[segments_[s].a] += ga;
    g[segments_[s].b] += gb;
  }
  return g;
}

Vec2 LengthModel::tangent_at(int i) const {
  const Surface& surface = metric_->surface();
  const SurfacePoint& p = nodes_[i].p;
  int prev = -1;
  int next = -1;
  if (nodes_[i].vertex < 0) {
    prev = sample_node(nodes_[i].edge, nodes_[i].index - 1);
    next = sample_node(nodes_[i].edge, nodes_[i].index + 1);
  } else {
    const auto inc = net_.graph().incidences(nodes_[i].vertex);
    auto neighbour = [&](const std::array<int, 2>& ie) {
      const int n = static_cast<int>(net_.curve(ie[0]).size());
      return sample_node(ie[0], ie[1] == 0 ? 1 : n - 2);
    };
    prev = neighbour(inc[1]);
    next = neighbour(inc[0]);
  }
  return surface.lift_near(nodes_[next].p, p) - surface.lift_near(nodes_[prev].p, p);
}

void LengthModel::build_frames() {
  const auto& g = net_.graph();
  frames_.assign(nodes_.size(), Eigen::Matrix<double, 2, Eigen::Dynamic>(2, 0));
  offset_.assign(nodes_.size(), 0);
  dof_width_.assign(nodes_.size(), 0);
  dofs_ = 0;
  for (int i = 0; i < node_count(); ++i) {
    int width = 2;
    if (nodes_[i].vertex >= 0) {
      const int deg = g.degree(nodes_[i].vertex);
      if (deg == 0) width = 0;
      if (deg == 2) width = 1;
    } else {
      width = 1;
    }
    const Mat2 gm = metric_->tensor(nodes_[i].p);
    Eigen::Matrix<double, 2, Eigen::Dynamic> b(2, width);
    if (width == 1) {
      const Vec2 t = tangent_at(i);
      const Vec2 w = gm * t;
      Vec2 nu(-w[1], w[0]);
      const double nn = std::sqrt(nu.dot(gm * nu));
      if (!(nn > 0.0)) throw DegenerateNet("zero tangent at a net sample");
      b.col(0) = nu / nn;
    } else if (width == 2) {
      const Eigen::LLT<Mat2> llt(gm);
      const Mat2 l = llt.matrixL();
      b = l.transpose().inverse();
    }
    frames_[i] = b;
    dof_width_[i] = width;
    offset_[i] = dofs_;
    dofs_ += width;
  }
}

Eigen::VectorXd LengthModel::reduced_gradient(const std::vector<Vec2>& g) const {
  Eigen::VectorXd r(dofs_);
  for (int i = 0; i < node_count(); ++i)
    if (dof_width_[i] > 0) r.segment(offset_[i], dof_width_[i]) = frames_[i].transpose() * g[i];
  return r;
}

Eigen::VectorXd LengthModel::reduced_gradient() const { return reduced_gradient(gradient()); }

Eigen::VectorXd LengthModel::lumped_mass() const {
  std::vector<double> m(nodes_.size(), 0.0);
  for (int s = 0; s < static_cast<int>(segments_.size()); ++s) {
    const double half = 0.5 * segments_[s].weight * segment_length(s);
    m[segments_[s].a] += half;
    m[segments_[s].b] += half;
  }
  Eigen::VectorXd out(dofs_);
  for (int i = 0; i < node_count(); ++i)
    for (int c = 0; c < dof_width_[i]; ++c) out[offset_[i] + c] = m[i];
  return out;
}

SurfacePoint LengthModel::displaced(int node, const Eigen::VectorXd& local) const {
  SurfacePoint p = nodes_[node].p;
  p.x += frames_[node] * local;
  return p;
}

Eigen::SparseMatrix<double> LengthModel::reduced_hessian(double h) const {
  std::vector<Eigen::Triplet<double>> trip;
  for (int j = 0; j < node_count(); ++j) {
    const int w = dof_width_[j];
    for (int c = 0; c < w; ++c) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(w);
      e[c] = h;
      const SurfacePoint plus = displaced(j, e);
      const SurfacePoint minus = displaced(j, -e);
      const int col = offset_[j] + c;
      for (int s : incident_[j]) {
        const auto [pa, pb] = segment_gradient(s, j, &plus);
        const auto [ma, mb] = segment_gradient(s, j, &minus);
        const Vec2 da = (pa - ma) / (2.0 * h);
        const Vec2 db = (pb - mb) / (2.0 * h);
        const int a = segments_[s].a;
        const int b = segments_[s].b;
        for (int r = 0; r < dof_width_[a]; ++r)
          trip.emplace_back(offset_[a] + r, col, frames_[a].col(r).dot(da));
        for (int r = 0; r < dof_width_[b]; ++r)
          trip.emplace_back(offset_[b] + r, col, frames_[b].col(r).dot(db));
      }
    }
  }
  Eigen::SparseMatrix<double> hmat(dofs_, dofs_);
  hmat.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseMatrix<double> ht = hmat.transpose();
  return 0.5 * (hmat + ht);
}

void LengthModel::apply(const Eigen::VectorXd& delta) {
  const Surface& surface = metric_->surface();
  for (int i = 0; i < node_count(); ++i) {
    if (dof_width_[i] == 0) continue;
    SurfacePoint p = displaced(i, delta.segment(offset_[i], dof_width_[i]));
    if (!surface.in_domain(p.chart, p.x)) throw DomainError("solver step left the chart domain");
    nodes_[i].p = surface.normalize(p);
  }
}

GammaNet LengthModel::to_net() const {
  GammaNet out = net_;
  const Surface& surface = metric_->surface();
  for (int v = 0; v < net_.graph().vertex_count(); ++v) out.vertices()[v] = nodes_[v].p;
  for (int e = 0; e < out.edge_count(); ++e) {
    auto& line = out.curves()[e];
    const int n = static_cast<int>(line.size());
    for (int k = 0; k < n; ++k) line[k] = nodes_[sample_node(e, k)].p;
    for (int k = 1; k + 1 < n; ++k)
      if (line[k].chart == line[k - 1].chart) line[k].x = surface.lift_near(line[k], line[k - 1]);
  }
  out.sync_endpoints(surface);
  out.set_arclength_uniform(false);
  return out;
}

}  // namespace sgn
