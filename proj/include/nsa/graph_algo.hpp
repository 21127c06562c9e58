#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace nsa::graph {

/// A directed multigraph given by its arcs; arc i goes tail[i] -> head[i].
struct ArcList {
  std::size_t vertex_count = 0;
  std::vector<int> tail;
  std::vector<int> head;
  std::vector<int> weight;

  void add(int from, int to, int w = 0) {
    tail.push_back(from);
    head.push_back(to);
    weight.push_back(w);
  }
  std::size_t arc_count() const { return tail.size(); }
};

/// Component id per vertex. Components are numbered in reverse topological
/// order of the condensation (sinks first), as Tarjan's algorithm emits them.
std::vector<int> strongly_connected_components(const ArcList& g);

struct HeaviestPath {
  /// Set when some cycle contains an arc of positive weight; holds the arcs
  /// of one such cycle.
  std::optional<std::vector<int>> positive_cycle;
  /// Largest total weight of a path, valid when positive_cycle is empty.
  long long weight = 0;
};

/// Maximum-weight path over non-negative arc weights, treating
/// zero-weight cycles as free.
HeaviestPath heaviest_path(const ArcList& g);

/// Arcs of a shortest path from `from` to `to` using only vertices whose
/// component equals `component`; empty if none.
std::vector<int> path_within(const ArcList& g, const std::vector<int>& component_of, int from,
                             int to);

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  int find(int x);
  bool unite(int a, int b);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

}  // namespace nsa::graph
