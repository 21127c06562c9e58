#include "nsa/group_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace nsa::group {

std::vector<int> CayleyWindow::boundary() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (distance[v] == radius) out.push_back(static_cast<int>(v));
  return out;
}

CayleyWindow ball(const GroupOracle& g, const Word& center, std::size_t radius,
                  std::size_t max_vertices) {
  CayleyWindow w;
  w.center = g.canonical(center);
  w.radius = radius;
  w.generator_count = g.generator_count();
  const std::size_t k = w.generator_count;
  w.vertices.push_back(w.center);
  w.distance.push_back(0);
  w.index.emplace(w.center, 0);
  w.neighbor.assign(k, -1);
  for (std::size_t head = 0; head < w.vertices.size(); ++head) {
    const std::size_t d = w.distance[head];
    for (std::size_t s = 0; s < k; ++s) {
      Element next = g.multiply(w.vertices[head], static_cast<int>(s));
      auto it = w.index.find(next);
      if (it == w.index.end()) {
        if (d == radius) continue;
        if (w.vertices.size() >= max_vertices)
          throw std::length_error("Cayley window exceeds " + std::to_string(max_vertices) + " vertices");
        const int id = static_cast<int>(w.vertices.size());
        it = w.index.emplace(next, id).first;
        w.vertices.push_back(std::move(next));
        w.distance.push_back(d + 1);
        w.neighbor.resize(w.neighbor.size() + k, -1);
      }
      w.neighbor[head * k + s] = it->second;
    }
  }
  return w;
}

std::size_t fitting_radius(const GroupOracle& g, std::size_t max_radius, std::size_t max_vertices) {
  std::unordered_set<Element> seen{g.identity()};
  std::vector<Element> sphere{g.identity()};
  for (std::size_t r = 0; r < max_radius; ++r) {
    std::vector<Element> next;
    for (const auto& x : sphere)
      for (std::size_t s = 0; s < g.generator_count(); ++s) {
        Element y = g.multiply(x, static_cast<int>(s));
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    if (seen.size() > max_vertices) return r;
    sphere = std::move(next);
  }
  return max_radius;
}

namespace {

// Vertex sets within a window: B_r(c) found by search inside the window.
std::vector<char> ball_mask(const CayleyWindow& w, int center, std::size_t r) {
  std::vector<char> mask(w.size(), 0);
  std::vector<std::size_t> dist(w.size(), SIZE_MAX);
  std::deque<int> queue{center};
  dist[center] = 0;
  mask[center] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (dist[v] == r) continue;
    for (std::size_t s = 0; s < w.generator_count; ++s) {
      const int u = w.neighbor[v * w.generator_count + s];
      if (u < 0 || dist[u] != SIZE_MAX) continue;
      dist[u] = dist[v] + 1;
      mask[u] = 1;
      queue.push_back(u);
    }
  }
  return mask;
}

// Unit vertex capacities on vertices outside both balls, unbounded arcs.
// Each window vertex v is split into in-node 2v and out-node 2v+1; flow on
// arcs is kept sparsely since the number of paths is small.
class VertexFlow {
 public:
  VertexFlow(const CayleyWindow& w, const std::vector<char>& source, const std::vector<char>& sink)
      : w_(w), source_(source), sink_(sink), through_(w.size(), 0) {}

  std::size_t run() {
    std::size_t flow = 0;
    while (augment()) ++flow;
    return flow;
  }

  // Internal vertices whose in-node is reachable in the residual graph but
  // whose out-node is not.
  std::vector<int> cut() {
    search();
    std::vector<int> out;
    for (std::size_t v = 0; v < w_.size(); ++v)
      if (is_internal(v) && seen_[2 * v] && !seen_[2 * v + 1]) out.push_back(static_cast<int>(v));
    return out;
  }

 private:
  bool is_internal(std::size_t v) const { return !source_[v] && !sink_[v]; }

  static std::uint64_t key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
  }
  int arc_flow(int u, int v) const {
    auto it = arc_.find(key(u, v));
    return it == arc_.end() ? 0 : it->second;
  }
  void push_arc(int u, int v) {
    // net flow: cancel the opposite direction first
    auto back = arc_.find(key(v, u));
    if (back != arc_.end() && back->second > 0) {
      if (--back->second == 0) arc_.erase(back);
      return;
    }
    ++arc_[key(u, v)];
  }

  // Breadth-first search in the residual graph from every source out-node.
  // Returns the sink vertex reached, or -1.
  int search() {
    const std::size_t n = w_.size();
    const std::size_t k = w_.generator_count;
    seen_.assign(2 * n, 0);
    via_.assign(2 * n, -1);
    std::deque<int> queue;
    for (std::size_t v = 0; v < n; ++v) {
      if (!source_[v]) continue;
      seen_[2 * v] = seen_[2 * v + 1] = 1;
      queue.push_back(static_cast<int>(2 * v + 1));
    }
    auto visit = [&](int node, int from) {
      if (seen_[node]) return;
      seen_[node] = 1;
      via_[node] = from;
      queue.push_back(node);
    };
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      const int v = node / 2;
      if (node % 2 == 1) {
        // out-node: any arc to a neighbour's in-node, or undo the split arc
        for (std::size_t s = 0; s < k; ++s) {
          const int u = w_.neighbor[v * k + s];
          if (u < 0 || u == v || source_[u]) continue;
          if (sink_[u]) {
            via_[2 * u] = node;
            return u;
          }
          visit(2 * u, node);
        }
        if (is_internal(v) && through_[v]) visit(2 * v, node);
      } else {
        // in-node: through the vertex, or back along an arc carrying flow in
        if (!through_[v]) visit(2 * v + 1, node);
        for (std::size_t s = 0; s < k; ++s) {
          const int u = w_.neighbor[v * k + s];
          if (u < 0 || u == v || sink_[u]) continue;
          if (arc_flow(u, v) > 0) visit(2 * u + 1, node);
        }
      }
    }
    return -1;
  }

  bool augment() {
    const int sink_vertex = search();
    if (sink_vertex < 0) return false;
    int node = 2 * sink_vertex;
    while (true) {
      const int prev = via_[node];
      const int v = node / 2, u = prev / 2;
      if (u == v)
        through_[v] = prev % 2 == 0 ? 1 : 0;  // across the split arc, either way
      else
        push_arc(u, v);  // forward arc, or cancelling flow on the reverse one
      if (source_[u]) break;
      node = prev;
    }
    return true;
  }

  const CayleyWindow& w_;
  const std::vector<char>& source_;
  const std::vector<char>& sink_;
  std::vector<char> through_;
  std::unordered_map<std::uint64_t, int> arc_;
  std::vector<char> seen_;
  std::vector<int> via_;
};

SeparatorReport separate(const GroupOracle& g, const CayleyWindow& window, const Word& c1,
                         const Word& c2, std::size_t r) {
  const std::size_t w = window.radius;
  if (g.length(g.canonical(c1)) + r > w || g.length(g.canonical(c2)) + r > w)
    throw std::invalid_argument("window too small to contain both balls");
  if (g.distance(c1, c2) < 2 * r + 2)
    throw std::invalid_argument("balls must be at distance at least 2 apart");
  const int i1 = window.index.at(g.canonical(c1));
  const int i2 = window.index.at(g.canonical(c2));
  const auto b1 = ball_mask(window, i1, r);
  const auto b2 = ball_mask(window, i2, r);

  VertexFlow flow(window, b1, b2);
  SeparatorReport report;
  report.disjoint_paths = flow.run();
  const auto cut = flow.cut();
  report.cut_size = cut.size();
  for (int v : cut) {
    report.cut_set.push_back(window.vertices[v]);
    if (window.distance[v] + 1 >= w) report.window_limited = true;
  }

  // removing the cut must disconnect the balls
  std::vector<char> blocked(window.size(), 0);
  for (int v : cut) blocked[v] = 1;
  std::vector<char> seen(window.size(), 0);
  std::deque<int> queue;
  for (std::size_t v = 0; v < window.size(); ++v)
    if (b1[v]) {
      seen[v] = 1;
      queue.push_back(static_cast<int>(v));
    }
  bool reached = false;
  while (!queue.empty() && !reached) {
    const int v = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < window.generator_count; ++s) {
      const int u = window.neighbor[v * window.generator_count + s];
      if (u < 0 || seen[u] || blocked[u]) continue;
      if (b2[u]) reached = true;
      seen[u] = 1;
      queue.push_back(u);
    }
  }
  report.verified = !reached && report.cut_size == report.disjoint_paths;
  return report;
}

}  // namespace

SeparatorReport min_separator(const GroupOracle& g, const Word& c1, const Word& c2, std::size_t r,
                              std::size_t window_radius, std::size_t max_vertices) {
  if (g.length(g.canonical(c1)) + r > window_radius || g.length(g.canonical(c2)) + r > window_radius)
    throw std::invalid_argument("window too small to contain both balls");
  if (g.distance(c1, c2) < 2 * r + 2)
    throw std::invalid_argument("balls must be at distance at least 2 apart");
  const auto window = ball(g, {}, window_radius, max_vertices);
  return separate(g, window, c1, c2, r);
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::Constant: return "constant";
    case Trend::Increasing: return "increasing";
    case Trend::Decreasing: return "decreasing";
    case Trend::Mixed: return "mixed";
    case Trend::Insufficient: return "insufficient";
  }
  return "?";
}

ProbeTable narrowness_probe(const GroupOracle& g, const std::vector<std::size_t>& radii,
                            const std::vector<Word>& centers, std::size_t window_radius) {
  ProbeTable table;
  std::vector<Word> usable;
  for (const auto& c : centers)
    if (g.canonical(c) != g.identity()) usable.push_back(c);
  if (usable.empty() || radii.empty()) return table;

  const auto window = ball(g, {}, window_radius);
  for (std::size_t r : radii) {
    std::optional<std::size_t> best;
    for (const auto& c : usable) {
      ProbeCell cell{r, c, std::nullopt, {}};
      try {
        cell.report = separate(g, window, {}, c, r);
        best = std::max(best.value_or(0), cell.report->cut_size);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      table.cells.push_back(std::move(cell));
    }
    if (best) table.max_cut.emplace_back(r, *best);
  }

  const auto& m = table.max_cut;
  if (m.size() < 2) return table;
  bool eq = true, inc = true, dec = true;
  for (std::size_t i = 1; i < m.size(); ++i) {
    eq = eq && m[i].second == m[i - 1].second;
    inc = inc && m[i].second > m[i - 1].second;
    dec = dec && m[i].second < m[i - 1].second;
  }
  table.trend = eq ? Trend::Constant : inc ? Trend::Increasing : dec ? Trend::Decreasing : Trend::Mixed;
  return table;
}

EndsReport ends_probe(const GroupOracle& g, std::size_t r, std::size_t window_radius,
                      std::size_t max_vertices) {
  if (window_radius <= r + 2) throw std::invalid_argument("window radius must exceed r + 2");
  const auto w = ball(g, {}, window_radius, max_vertices);
  const std::size_t k = w.generator_count;
  std::vector<char> seen(w.size(), 0);
  EndsReport report;
  for (std::size_t start = 0; start < w.size(); ++start) {
    if (seen[start] || w.distance[start] <= r) continue;
    std::size_t size = 0;
    bool unbounded = false;
    std::deque<int> queue{static_cast<int>(start)};
    seen[start] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      ++size;
      if (w.distance[v] == window_radius) unbounded = true;
      for (std::size_t s = 0; s < k; ++s) {
        const int u = w.neighbor[v * k + s];
        if (u < 0 || seen[u] || w.distance[u] <= r) continue;
        seen[u] = 1;
        queue.push_back(u);
      }
    }
    if (unbounded) {
      ++report.unbounded_components;
      report.unbounded_sizes.push_back(size);
    } else {
      ++report.finite_components;
      report.finite_sizes.push_back(size);
    }
  }
  return report;
}

QiReport qi_check(const std::vector<std::pair<Word, Word>>& samples, double k,
                  const GroupOracle& source, const GroupOracle& target,
                  std::optional<std::size_t> density_window) {
  if (!(k >= 1.0)) throw std::invalid_argument("quasi-isometry constant must be at least 1");
  QiReport report;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const auto d = source.distance(samples[i].first, samples[j].first);
      const auto dt = target.distance(samples[i].second, samples[j].second);
      const double lo = static_cast<double>(d) / k - k;
      const double hi = k * static_cast<double>(d) + k;
      const double x = static_cast<double>(dt);
      if (x < lo || x > hi) report.violations.push_back({i, j, d, dt});
    }
  }
  if (density_window) {
    const auto window = ball(target, {}, *density_window);
    const auto reach = static_cast<std::size_t>(std::floor(k));
    std::unordered_set<Element> covered;
    for (const auto& [x, image] : samples) {
      const auto near = ball(target, image, reach);
      covered.insert(near.vertices.begin(), near.vertices.end());
    }
    for (const auto& v : window.vertices)
      if (!covered.count(v)) report.uncovered.push_back(v);
  }
  return report;
}

}  // namespace nsa::group
