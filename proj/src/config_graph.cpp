#include "nsa/config_graph.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nsa/graph_algo.hpp"

namespace nsa {

std::optional<int> ConfigGraph::find(const Configuration& c) const {
  auto it = index.find(c);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<int>> ConfigGraph::out_edges() const {
  std::vector<std::vector<int>> out(vertices.size());
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].source].push_back(static_cast<int>(e));
  return out;
}

std::vector<std::vector<int>> ConfigGraph::in_edges() const {
  std::vector<std::vector<int>> in(vertices.size());
  for (std::size_t e = 0; e < edges.size(); ++e) in[edges[e].target].push_back(static_cast<int>(e));
  return in;
}

ConfigGraph build(const Machine& m, const Horizon& horizon) {
  ConfigGraph cg;
  cg.horizon = horizon;
  const auto out = m.out_edges();

  auto add_vertex = [&cg](Configuration c, std::size_t depth) {
    const int id = static_cast<int>(cg.vertices.size());
    cg.index.emplace(c, id);
    cg.vertices.push_back(std::move(c));
    cg.depth.push_back(depth);
    cg.truncated.push_back(false);
    return id;
  };
  add_vertex({m.initial, empty_tree()}, 0);

  for (std::size_t head = 0; head < cg.vertices.size(); ++head) {
    if (cg.depth[head] >= horizon.max_depth) {
      cg.truncated[head] = true;
      cg.hit_horizon = true;
      continue;
    }
    const Configuration from = cg.vertices[head];
    for (int e : out[from.state]) {
      const Edge& edge = m.edges[e];
      auto tree = apply(edge.op, from.tree);
      if (!tree) continue;
      Configuration to{edge.target, std::move(*tree)};
      int target;
      if (auto found = cg.find(to)) {
        target = *found;
      } else if (to.tree.edge_count() > horizon.max_tree_edges ||
                 cg.vertices.size() >= horizon.max_vertices) {
        cg.truncated[head] = true;
        cg.hit_horizon = true;
        continue;
      } else {
        target = add_vertex(std::move(to), cg.depth[head] + 1);
      }
      cg.edges.push_back({static_cast<int>(head), target, edge.input, e});
    }
  }

  cg.coaccessible.assign(cg.vertices.size(), false);
  const auto in = cg.in_edges();
  std::deque<int> queue;
  for (std::size_t v = 0; v < cg.vertices.size(); ++v) {
    if (is_accepting(m, cg.vertices[v])) {
      cg.coaccessible[v] = true;
      queue.push_back(static_cast<int>(v));
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : in[v]) {
      const int u = cg.edges[e].source;
      if (!cg.coaccessible[u]) {
        cg.coaccessible[u] = true;
        queue.push_back(u);
      }
    }
  }
  return cg;
}

std::optional<DegreeViolation> check_degrees(const ConfigGraph& cg, const Machine& m) {
  const auto out = m.out_edges();
  for (std::size_t v = 0; v < cg.vertices.size(); ++v) {
    const Configuration& c = cg.vertices[v];
    std::size_t eps = 0;
    std::map<Letter, std::size_t> per_letter;
    for (int e : out[c.state]) {
      const Edge& edge = m.edges[e];
      if (!is_defined(edge.op, c.tree)) continue;
      if (edge.input == kEpsilonLetter) ++eps;
      else ++per_letter[edge.input];
    }
    const int id = static_cast<int>(v);
    if (eps > 1) return DegreeViolation{id, "more than one epsilon outedge"};
    if (eps == 1 && !per_letter.empty())
      return DegreeViolation{id, "epsilon outedge alongside letter outedges"};
    for (auto& [a, n] : per_letter)
      if (n > 1) return DegreeViolation{id, "two outedges labelled " + letter_name(a, m)};
  }
  return std::nullopt;
}

EpsilonRun max_eps_run(const ConfigGraph& cg) {
  graph::ArcList g;
  g.vertex_count = cg.vertices.size();
  for (const auto& e : cg.edges)
    if (e.label == kEpsilonLetter) g.add(e.source, e.target, 1);
  auto path = graph::heaviest_path(g);
  if (path.positive_cycle) return {false, 0};
  return {true, static_cast<std::size_t>(path.weight)};
}

Projection project(const ConfigGraph& cg, const Machine& m, const group::GroupOracle& oracle) {
  std::vector<int> generator_of(m.input_alphabet.size());
  for (std::size_t a = 0; a < m.input_alphabet.size(); ++a) {
    auto g = oracle.generator_index(m.input_alphabet[a]);
    if (!g) throw std::invalid_argument("letter '" + m.input_alphabet[a] + "' is not a generator of the group");
    generator_of[a] = *g;
  }

  Projection p;
  const std::size_t n = cg.vertices.size();
  p.image.assign(n, std::nullopt);
  std::vector<int> via(n, -1);
  if (n == 0 || !cg.coaccessible[0]) return p;

  auto times = [&](const group::Element& g, Letter a) {
    return a == kEpsilonLetter ? g : oracle.multiply(g, generator_of[a]);
  };

  const auto out = cg.out_edges();
  p.image[0] = oracle.identity();
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : out[v]) {
      const int u = cg.edges[e].target;
      if (!cg.coaccessible[u] || p.image[u]) continue;
      p.image[u] = times(*p.image[v], cg.edges[e].label);
      via[u] = e;
      queue.push_back(u);
    }
  }

  auto path_label = [&](int v) {
    LetterWord w;
    for (; via[v] >= 0; v = cg.edges[via[v]].source)
      if (cg.edges[via[v]].label != kEpsilonLetter) w.push_back(cg.edges[via[v]].label);
    return decode_word(m, LetterWord(w.rbegin(), w.rend()));
  };

  for (const auto& e : cg.edges) {
    if (!p.image[e.source] || !p.image[e.target]) continue;
    ++p.checked_edges;
    if (times(*p.image[e.source], e.label) == *p.image[e.target]) continue;
    Word second = path_label(e.source);
    if (e.label != kEpsilonLetter) second.push_back(m.input_alphabet[e.label]);
    p.violations.push_back({e.target, path_label(e.target), std::move(second)});
  }
  return p;
}

std::string to_string(LiftStatus s) {
  switch (s) {
    case LiftStatus::Lifted: return "lifted";
    case LiftStatus::Stuck: return "stuck";
    case LiftStatus::CapExceeded: return "cap-exceeded";
    case LiftStatus::Nondeterministic: return "nondeterministic";
  }
  return "?";
}

Lift lift_path(const Machine& m, const Word& w, const ResourceCaps& caps) {
  const auto out = m.out_edges();
  Lift lift;
  lift.path.push_back({m.initial, empty_tree()});
  std::size_t pos = 0;
  std::size_t eps_run = 0;
  while (pos < w.size()) {
    const Configuration& c = lift.path.back();
    const auto letter = m.letter_index(w[pos]);
    if (!letter) {
      lift.status = LiftStatus::Stuck;
      lift.position = pos;
      return lift;
    }
    std::vector<std::pair<Letter, Configuration>> moves;
    for (int e : out[c.state]) {
      const Edge& edge = m.edges[e];
      if (edge.input != kEpsilonLetter && edge.input != *letter) continue;
      if (auto t = apply(edge.op, c.tree)) moves.push_back({edge.input, {edge.target, std::move(*t)}});
    }
    if (moves.size() > 1) {
      lift.status = LiftStatus::Nondeterministic;
      lift.position = pos;
      return lift;
    }
    if (moves.empty()) {
      lift.status = LiftStatus::Stuck;
      lift.position = pos;
      return lift;
    }
    auto& [label, next] = moves.front();
    if (label == kEpsilonLetter) {
      if (++eps_run > caps.max_steps) {
        lift.status = LiftStatus::CapExceeded;
        lift.position = pos;
        return lift;
      }
    } else {
      eps_run = 0;
      ++pos;
    }
    if (next.tree.edge_count() > caps.max_tree_edges) {
      lift.status = LiftStatus::CapExceeded;
      lift.position = pos;
      return lift;
    }
    lift.labels.push_back(label);
    lift.path.push_back(std::move(next));
  }
  return lift;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const ConfigGraph& cg, const Machine& m) {
  std::ostringstream os;
  os << "digraph configurations {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < cg.vertices.size(); ++v) {
    const auto& c = cg.vertices[v];
    os << "  n" << v << " [label=\""
       << dot_escape(branch_name(c.tree, m.memory_alphabet, m.states[c.state])) << '"';
    if (v == 0) os << ", penwidth=2";
    if (is_accepting(m, c)) os << ", shape=doublecircle";
    else if (!cg.coaccessible[v]) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : cg.edges) {
    const std::string label = e.label == kEpsilonLetter ? "ε" : m.input_alphabet[e.label];
    os << "  n" << e.source << " -> n" << e.target << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace nsa
