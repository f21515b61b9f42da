#pragma once

#include <array>
#include <utility>
#include <vector>

namespace sgn {

struct GraphEdge {
  std::array<int, 2> ends{0, 0};  // vertex at parameter 0 and 1
  int multiplicity = 1;
};

struct GraphComponent {
  std::vector<int> vertices;
  std::vector<int> edges;
};

class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;
  explicit WeightedMultigraph(int vertex_count) : vertex_count_(vertex_count) {}

  int add_vertex() { return vertex_count_++; }
  int add_edge(int v0, int v1, int multiplicity = 1);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const GraphEdge& edge(int e) const { return edges_.at(e); }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  void set_multiplicity(int e, int n);
  void reverse_edge(int e) { std::swap(edges_.at(e).ends[0], edges_.at(e).ends[1]); }

  // Number of edge ends at v; a loop at v counts twice.
  int degree(int v) const;
  // (edge, end) pairs meeting at v.
  std::vector<std::array<int, 2>> incidences(int v) const;

  std::vector<GraphComponent> components() const;
  // Per component: a single closed loop (cycle of degree-2 vertices with one
  // multiplicity), or every vertex of degree at least 3.
  std::vector<bool> is_good() const;
  bool all_good() const;

  void validate() const;

 private:
  int vertex_count_ = 0;
  std::vector<GraphEdge> edges_;
};

}  // namespace sgn
