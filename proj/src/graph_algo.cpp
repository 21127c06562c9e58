#include "nsa/graph_algo.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace nsa::graph {

std::vector<int> strongly_connected_components(const ArcList& g) {
  const int n = static_cast<int>(g.vertex_count);
  std::vector<std::vector<int>> out(n);
  for (std::size_t a = 0; a < g.arc_count(); ++a) out[g.tail[a]].push_back(g.head[a]);

  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0, components = 0;

  struct Frame {
    int v;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < out[f.v].size()) {
        const int w = out[f.v][f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const int v = f.v;
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return comp;
}

std::vector<int> path_within(const ArcList& g, const std::vector<int>& component_of, int from,
                             int to) {
  const int n = static_cast<int>(g.vertex_count);
  std::vector<std::vector<int>> out(n);
  for (std::size_t a = 0; a < g.arc_count(); ++a) out[g.tail[a]].push_back(static_cast<int>(a));
  const int c = component_of[from];
  std::vector<int> via(n, -2);
  via[from] = -1;
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (int a : out[v]) {
      const int w = g.head[a];
      if (via[w] != -2 || component_of[w] != c) continue;
      via[w] = a;
      queue.push_back(w);
    }
  }
  if (via[to] == -2) return {};
  std::vector<int> arcs;
  for (int v = to; v != from; v = g.tail[via[v]]) arcs.push_back(via[v]);
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

HeaviestPath heaviest_path(const ArcList& g) {
  const auto comp = strongly_connected_components(g);
  HeaviestPath result;
  for (std::size_t a = 0; a < g.arc_count(); ++a) {
    if (g.weight[a] <= 0 || comp[g.tail[a]] != comp[g.head[a]]) continue;
    std::vector<int> cycle{static_cast<int>(a)};
    if (g.head[a] != g.tail[a]) {
      auto back = path_within(g, comp, g.head[a], g.tail[a]);
      cycle.insert(cycle.end(), back.begin(), back.end());
    }
    result.positive_cycle = std::move(cycle);
    return result;
  }
  const int components = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  // Components come sinks first, so arcs between components always go from
  // a higher id to a lower one.
  std::vector<std::vector<int>> by_tail_comp(components);
  for (std::size_t a = 0; a < g.arc_count(); ++a) by_tail_comp[comp[g.tail[a]]].push_back(static_cast<int>(a));
  std::vector<long long> best(components, 0);
  for (int c = 0; c < components; ++c) {
    for (int a : by_tail_comp[c]) {
      const int d = comp[g.head[a]];
      if (d == c) continue;
      best[c] = std::max(best[c], g.weight[a] + best[d]);
    }
    result.weight = std::max(result.weight, best[c]);
  }
  return result;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSets::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

}  // namespace nsa::graph
