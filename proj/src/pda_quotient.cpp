#include "nsa/pda_quotient.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "nsa/analysis.hpp"
#include "nsa/graph_algo.hpp"

namespace nsa {

namespace {

std::vector<std::vector<int>> undirected(const ConfigGraph& cg) {
  std::vector<std::vector<int>> adj(cg.vertices.size());
  for (const auto& e : cg.edges) {
    if (e.source == e.target) continue;
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

std::vector<std::size_t> distances_from(const std::vector<std::vector<int>>& adj, int s) {
  constexpr auto kFar = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(adj.size(), kFar);
  std::deque<int> queue{s};
  dist[s] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : adj[v]) {
      if (dist[u] != kFar) continue;
      dist[u] = dist[v] + 1;
      queue.push_back(u);
    }
  }
  return dist;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Partition nonerasing_classes(const ConfigGraph& cg, const Machine& m, bool force) {
  if (!force && !is_pushdown(m)) throw std::invalid_argument("machine has down or up edges; not a pushdown automaton");

  const auto n = cg.vertices.size();
  const auto adj = undirected(cg);
  graph::DisjointSets sets(n);

  std::unordered_map<MemoryTree, std::vector<int>> by_tree;
  std::vector<const MemoryTree*> order;
  for (std::size_t v = 0; v < n; ++v) {
    auto [it, fresh] = by_tree.try_emplace(cg.vertices[v].tree);
    if (fresh) order.push_back(&it->first);
    it->second.push_back(static_cast<int>(v));
  }

  std::vector<int> seen(n, -1);
  int stamp = 0;
  for (const MemoryTree* t : order) {
    const auto& same = by_tree[*t];
    if (same.size() < 2) continue;
    const int first = stamp;
    for (int s : same) {
      if (seen[s] >= first) continue;  // reached from an earlier member
      const int mark = stamp++;
      std::deque<int> queue{s};
      seen[s] = mark;
      while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (cg.vertices[v].tree == *t) sets.unite(s, v);
        for (int u : adj[v]) {
          if (seen[u] == mark || !cg.vertices[u].tree.extends(*t)) continue;
          seen[u] = mark;
          queue.push_back(u);
        }
      }
    }
  }

  Partition p;
  p.class_of.assign(n, -1);
  std::vector<int> number(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    const int root = sets.find(static_cast<int>(v));
    if (number[root] < 0) number[root] = static_cast<int>(p.class_count++);
    p.class_of[v] = number[root];
  }
  return p;
}

QuotientGraph quotient(const ConfigGraph& cg, const Partition& p) {
  QuotientGraph q;
  q.class_of = p.class_of;
  q.classes.resize(p.class_count);
  for (std::size_t v = 0; v < p.class_of.size(); ++v) q.classes[p.class_of[v]].push_back(static_cast<int>(v));

  std::set<std::pair<int, int>> links;
  for (const auto& e : cg.edges) {
    int a = p.class_of[e.source];
    int b = p.class_of[e.target];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    links.insert({a, b});
  }
  q.edges.assign(links.begin(), links.end());

  const auto adj = undirected(cg);
  q.class_diameter.assign(q.classes.size(), 0);
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    const auto& members = q.classes[c];
    if (members.size() < 2) continue;
    for (int s : members) {
      const auto dist = distances_from(adj, s);
      for (int t : members) q.class_diameter[c] = std::max(q.class_diameter[c], dist[t]);
    }
  }
  return q;
}

TreeCheck check_tree(const QuotientGraph& q) {
  const auto n = q.classes.size();
  graph::DisjointSets sets(n);
  std::vector<std::vector<int>> forest(n);
  for (auto [a, b] : q.edges) {
    if (sets.unite(a, b)) {
      forest[a].push_back(b);
      forest[b].push_back(a);
      continue;
    }
    // a and b already joined: the forest path plus this edge is a cycle
    std::vector<int> prev(n, -1);
    std::deque<int> queue{a};
    prev[a] = a;
    while (!queue.empty() && prev[b] < 0) {
      const int v = queue.front();
      queue.pop_front();
      for (int u : forest[v]) {
        if (prev[u] >= 0) continue;
        prev[u] = v;
        queue.push_back(u);
      }
    }
    TreeCheck check{false, {}};
    for (int v = b; v != a; v = prev[v]) check.cycle.push_back(v);
    check.cycle.push_back(a);
    return check;
  }
  return {};
}

std::size_t quotient_distortion(const QuotientGraph& q) {
  std::size_t best = 0;
  for (auto d : q.class_diameter) best = std::max(best, d);
  return best;
}

std::vector<int> find_simple_cycle(const ConfigGraph& cg, std::size_t min_length) {
  const auto adj = undirected(cg);
  const auto n = adj.size();
  std::vector<int> prev(n);
  std::vector<std::size_t> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (int t : adj[s]) {
      if (t < static_cast<int>(s)) continue;
      // shortest path s -> t avoiding the edge {s, t}
      std::fill(prev.begin(), prev.end(), -1);
      prev[s] = static_cast<int>(s);
      dist[s] = 0;
      std::deque<int> queue{static_cast<int>(s)};
      while (!queue.empty() && prev[t] < 0) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : adj[v]) {
          if (prev[u] >= 0 || (v == static_cast<int>(s) && u == t)) continue;
          prev[u] = v;
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
      if (prev[t] < 0 || dist[t] + 1 < min_length) continue;
      std::vector<int> cycle;
      for (int v = t; v != static_cast<int>(s); v = prev[v]) cycle.push_back(v);
      cycle.push_back(static_cast<int>(s));
      std::reverse(cycle.begin(), cycle.end());
      return cycle;
    }
  }
  return {};
}

std::string export_dot(const QuotientGraph& q, const ConfigGraph& cg, const Machine& m) {
  std::ostringstream os;
  os << "graph quotient {\n";
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    os << "  c" << c << " [label=\"";
    for (std::size_t i = 0; i < q.classes[c].size(); ++i) {
      const auto& v = cg.vertices[q.classes[c][i]];
      if (i > 0) os << "\\n";
      os << escape(branch_name(v.tree, m.memory_alphabet, m.states[v.state]));
    }
    os << "\"];\n";
  }
  for (auto [a, b] : q.edges) os << "  c" << a << " -- c" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace nsa
