#include "sgn/graph.hpp"

#include <algorithm>
#include <numeric>

#include "sgn/errors.hpp"

namespace sgn {

int WeightedMultigraph::add_edge(int v0, int v1, int multiplicity) {
  if (v0 < 0 || v0 >= vertex_count_ || v1 < 0 || v1 >= vertex_count_)
    throw StructuralError("edge endpoint references a missing vertex");
  if (multiplicity < 1) throw StructuralError("edge multiplicity must be positive");
  edges_.push_back({{v0, v1}, multiplicity});
  return edge_count() - 1;
}

void WeightedMultigraph::set_multiplicity(int e, int n) {
  if (n < 1) throw StructuralError("edge multiplicity must be positive");
  edges_.at(e).multiplicity = n;
}

int WeightedMultigraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges_) d += (e.ends[0] == v) + (e.ends[1] == v);
  return d;
}

std::vector<std::array<int, 2>> WeightedMultigraph::incidences(int v) const {
  std::vector<std::array<int, 2>> out;
  for (int e = 0; e < edge_count(); ++e)
    for (int i = 0; i < 2; ++i)
      if (edges_[e].ends[i] == v) out.push_back({e, i});
  return out;
}

std::vector<GraphComponent> WeightedMultigraph::components() const {
  std::vector<int> parent(vertex_count_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : edges_) parent[find(e.ends[0])] = find(e.ends[1]);

  std::vector<int> index(vertex_count_, -1);
  std::vector<GraphComponent> out;
  for (int v = 0; v < vertex_count_; ++v) {
    const int r = find(v);
    if (index[r] < 0) {
      index[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[index[r]].vertices.push_back(v);
  }
  for (int e = 0; e < edge_count(); ++e) out[index[find(edges_[e].ends[0])]].edges.push_back(e);
  return out;
}

std::vector<bool> WeightedMultigraph::is_good() const {
  std::vector<bool> out;
  for (const auto& c : components()) {
    if (c.edges.empty()) {
      out.push_back(false);
      continue;
    }
    bool all_two = true;
    bool all_three = true;
    for (int v : c.vertices) {
      const int d = degree(v);
      all_two = all_two && d == 2;
      all_three = all_three && d >= 3;
    }
    const int n = edges_[c.edges.front()].multiplicity;
    const bool same = std::all_of(c.edges.begin(), c.edges.end(),
                                  [&](int e) { return edges_[e].multiplicity == n; });
    out.push_back((all_two && same) || all_three);
  }
  return out;
}

bool WeightedMultigraph::all_good() const {
  const auto g = is_good();
  return std::all_of(g.begin(), g.end(), [](bool b) { return b; });
}

void WeightedMultigraph::validate() const {
  for (const auto& e : edges_) {
    for (int v : e.ends)
      if (v < 0 || v >= vertex_count_) throw StructuralError("edge endpoint references a missing vertex");
    if (e.multiplicity < 1) throw StructuralError("edge multiplicity must be positive");
  }
}

}  // namespace sgn
