#pragma once

#include <Eigen/Sparse>

#include <vector>

#include "sgn/net.hpp"

namespace sgn {

// Discrete length of a net as a function of its node positions. Nodes are the
// graph vertices followed by the interior samples of every edge.
//
// Reduced coordinates: interior samples and degree-2 vertices move along the
// g-unit normal (one coordinate each), other vertices move in a g-orthonormal
// frame (two coordinates). Tangential sliding is a reparametrization and is
// not a degree of freedom.
class LengthModel {
 public:
  struct Node {
    int vertex = -1;  // vertex id, or -1 for an interior sample
    int edge = -1;    // edge of an interior sample
    int index = -1;   // sample index within the edge
    SurfacePoint p;
  };
  struct Segment {
    int a = 0;
    int b = 0;
    int edge = 0;
    double weight = 1.0;  // multiplicity
  };

  LengthModel(const Metric& metric, const GammaNet& net);

  const Metric& metric() const { return *metric_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const { return nodes_[i]; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<int>& node_segments(int i) const { return incident_[i]; }
  int vertex_node(int v) const { return v; }
  int sample_node(int e, int k) const;  // node of sample k of edge e
  bool is_normal_node(int i) const { return dof_width_[i] == 1; }

  double length() const;
  double segment_length(int s) const;
  // Covector gradient at every node, in the node's chart.
  std::vector<Vec2> gradient() const;
  // Gradient contributions of one segment to its two nodes (node charts),
  // multiplicity included. Positions can be overridden for one node.
  std::pair<Vec2, Vec2> segment_gradient(int s, int override_node = -1,
                                         const SurfacePoint* override_point = nullptr) const;

  // Rebuilds the reduced frames at the current positions.
  void build_frames();
  int dof_count() const { return dofs_; }
  int dof_offset(int node) const { return offset_[node]; }
  int dof_width(int node) const { return dof_width_[node]; }
  const Eigen::Matrix<double, 2, Eigen::Dynamic>& frame(int node) const { return frames_[node]; }

  Eigen::VectorXd reduced_gradient() const;
  Eigen::VectorXd reduced_gradient(const std::vector<Vec2>& g) const;
  // Lumped mass per reduced coordinate (multiplicity times half the adjacent
  // segment lengths).
  Eigen::VectorXd lumped_mass() const;
  // Finite-difference Hessian of the length in reduced coordinates, frames
  // held fixed.
  Eigen::SparseMatrix<double> reduced_hessian(double h = 1e-5) const;

  // x_i <- x_i + frame_i * delta_i, points renormalized to preferred charts.
  void apply(const Eigen::VectorXd& delta);
  SurfacePoint displaced(int node, const Eigen::VectorXd& local) const;

  void set_node(int i, const SurfacePoint& p) { nodes_[i].p = p; }
  GammaNet to_net() const;

 private:
  Vec2 tangent_at(int i) const;

  const Metric* metric_;
  GammaNet net_;
  std::vector<Node> nodes_;
  std::vector<Segment> segments_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> edge_first_node_;
  std::vector<Eigen::Matrix<double, 2, Eigen::Dynamic>> frames_;
  std::vector<int> offset_;
  std::vector<int> dof_width_;
  int dofs_ = 0;
};

}  // namespace sgn
