#include "nsa/acceptance.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace nsa {

namespace {

void collect(const Machine& m, const std::vector<int>& edges, const Configuration& c, Letter letter,
             std::vector<Transition>& out) {
  for (int e : edges) {
    const Edge& edge = m.edges[e];
    if (edge.input != letter) continue;
    if (auto t = apply(edge.op, c.tree)) out.push_back({e, {edge.target, std::move(*t)}});
  }
}

}  // namespace

std::vector<Transition> step(const Machine& m, int state, const MemoryTree& tree, Letter letter) {
  std::vector<Transition> out;
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const Edge& edge = m.edges[e];
    if (edge.source != state || edge.input != letter) continue;
    if (auto t = apply(edge.op, tree)) out.push_back({static_cast<int>(e), {edge.target, std::move(*t)}});
  }
  return out;
}

std::vector<Transition> applicable(const Machine& m, const Configuration& c, Letter letter) {
  auto out = step(m, c.state, c.tree, kEpsilonLetter);
  if (letter != kEpsilonLetter) {
    auto more = step(m, c.state, c.tree, letter);
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.edge < b.edge; });
  }
  return out;
}

bool is_accepting(const Machine& m, const Configuration& c) {
  return m.is_final(c.state) && c.tree.is_empty();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "ACCEPTED";
    case Verdict::Rejected: return "REJECTED";
    case Verdict::CapExceeded: return "CAP_EXCEEDED";
  }
  return "?";
}

std::string to_string(CapKind c) {
  switch (c) {
    case CapKind::None: return "none";
    case CapKind::Steps: return "max_steps";
    case CapKind::TreeEdges: return "max_tree_edges";
    case CapKind::Frontier: return "max_frontier";
  }
  return "?";
}

std::string to_string(TraceStop s) {
  switch (s) {
    case TraceStop::Accepting: return "accepting";
    case TraceStop::Stuck: return "stuck";
    case TraceStop::CapExceeded: return "cap-exceeded";
  }
  return "?";
}

AcceptResult accepts(const Machine& m, const Word& word, const ResourceCaps& caps) {
  auto encoded = encode_word(m, word);
  if (!encoded) return {};
  return accepts(m, *encoded, caps);
}

AcceptResult accepts(const Machine& m, const LetterWord& word, const ResourceCaps& caps) {
  struct Node {
    Configuration config;
    std::size_t pos;
    int parent;
    int edge;
  };
  std::vector<Node> nodes;
  auto hash = [&nodes](int i) {
    const auto& n = nodes[i];
    return std::hash<Configuration>{}(n.config) ^ (n.pos * 0x9e3779b97f4a7c15ULL);
  };
  auto eq = [&nodes](int a, int b) {
    return nodes[a].pos == nodes[b].pos && nodes[a].config == nodes[b].config;
  };
  std::unordered_set<int, decltype(hash), decltype(eq)> seen(64, hash, eq);
  const auto out_edges = m.out_edges();

  auto witness = [&](int i) {
    Computation c;
    c.outcome = nodes[i].config.tree;
    for (; nodes[i].parent >= 0; i = nodes[i].parent) c.path.push_back(nodes[i].edge);
    std::reverse(c.path.begin(), c.path.end());
    c.word = decode_word(m, word);
    return c;
  };

  nodes.push_back({{m.initial, empty_tree()}, 0, -1, -1});
  seen.insert(0);
  std::deque<int> frontier{0};
  CapKind pruned = CapKind::None;
  std::size_t steps = 0;

  auto done = [&](int i) {
    return nodes[i].pos == word.size() && is_accepting(m, nodes[i].config);
  };
  if (done(0)) return {Verdict::Accepted, witness(0), CapKind::None};

  while (!frontier.empty()) {
    if (++steps > caps.max_steps) return {Verdict::CapExceeded, std::nullopt, CapKind::Steps};
    const int cur = frontier.front();
    frontier.pop_front();
    for (int e : out_edges[nodes[cur].config.state]) {
      const Edge& edge = m.edges[e];
      std::size_t pos = nodes[cur].pos;
      if (edge.input != kEpsilonLetter) {
        if (pos >= word.size() || word[pos] != edge.input) continue;
        ++pos;
      }
      auto t = apply(edge.op, nodes[cur].config.tree);
      if (!t) continue;
      if (t->edge_count() > caps.max_tree_edges) {
        pruned = CapKind::TreeEdges;
        continue;
      }
      nodes.push_back({{edge.target, std::move(*t)}, pos, cur, e});
      const int idx = static_cast<int>(nodes.size()) - 1;
      if (!seen.insert(idx).second) {
        nodes.pop_back();
        continue;
      }
      if (done(idx)) return {Verdict::Accepted, witness(idx), CapKind::None};
      frontier.push_back(idx);
      if (frontier.size() > caps.max_frontier)
        return {Verdict::CapExceeded, std::nullopt, CapKind::Frontier};
    }
  }
  if (pruned != CapKind::None) return {Verdict::CapExceeded, std::nullopt, pruned};
  return {Verdict::Rejected, std::nullopt, CapKind::None};
}

namespace {

using ConfigSet = std::unordered_set<Configuration>;

// Epsilon closure of `start`, throwing when a cap prunes it.
ConfigSet closure(const Machine& m, const std::vector<std::vector<int>>& out_edges,
                  ConfigSet start, const ResourceCaps& caps) {
  std::vector<Configuration> work(start.begin(), start.end());
  std::size_t steps = 0;
  while (!work.empty()) {
    if (++steps > caps.max_steps)
      throw CapExceededError(CapKind::Steps, "epsilon closure exceeded max_steps");
    Configuration c = std::move(work.back());
    work.pop_back();
    std::vector<Transition> next;
    collect(m, out_edges[c.state], c, kEpsilonLetter, next);
    for (auto& t : next) {
      if (t.target.tree.edge_count() > caps.max_tree_edges)
        throw CapExceededError(CapKind::TreeEdges, "epsilon closure exceeded max_tree_edges");
      if (start.insert(t.target).second) {
        work.push_back(std::move(t.target));
        if (start.size() > caps.max_frontier)
          throw CapExceededError(CapKind::Frontier, "epsilon closure exceeded max_frontier");
      }
    }
  }
  return start;
}

}  // namespace

std::vector<Word> enumerate_accepted(const Machine& m, std::size_t max_len,
                                     const ResourceCaps& caps) {
  const auto out_edges = m.out_edges();
  std::vector<LetterWord> found;
  LetterWord prefix;

  auto visit = [&](auto&& self, const ConfigSet& configs) -> void {
    for (const auto& c : configs) {
      if (is_accepting(m, c)) {
        found.push_back(prefix);
        break;
      }
    }
    if (prefix.size() == max_len) return;
    for (Letter a = 0; a < static_cast<Letter>(m.input_alphabet.size()); ++a) {
      ConfigSet next;
      for (const auto& c : configs) {
        std::vector<Transition> moves;
        collect(m, out_edges[c.state], c, a, moves);
        for (auto& t : moves) {
          if (t.target.tree.edge_count() > caps.max_tree_edges)
            throw CapExceededError(CapKind::TreeEdges, "enumeration exceeded max_tree_edges");
          next.insert(std::move(t.target));
        }
      }
      if (next.empty()) continue;
      prefix.push_back(a);
      self(self, closure(m, out_edges, std::move(next), caps));
      prefix.pop_back();
    }
  };
  visit(visit, closure(m, out_edges, ConfigSet{{m.initial, empty_tree()}}, caps));

  std::sort(found.begin(), found.end(), [](const LetterWord& a, const LetterWord& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Word> out;
  out.reserve(found.size());
  for (auto& w : found) out.push_back(decode_word(m, w));
  return out;
}

NondeterminismError::NondeterminismError(int state, int edge_a, int edge_b)
    : std::runtime_error("nondeterminism detected at state " + std::to_string(state) +
                         ": edges " + std::to_string(edge_a) + " and " + std::to_string(edge_b)),
      state(state),
      edge_a(edge_a),
      edge_b(edge_b) {}

Trace run_trace(const Machine& m, const Word& word, const ResourceCaps& caps) {
  LetterWord letters;
  for (const auto& a : word) {
    auto i = m.letter_index(a);
    if (!i) break;
    letters.push_back(*i);
  }
  const auto out_edges = m.out_edges();
  Trace trace;
  trace.last = {m.initial, empty_tree()};
  std::size_t pos = 0;
  while (true) {
    if (pos == letters.size() && is_accepting(m, trace.last)) {
      trace.stop = TraceStop::Accepting;
      break;
    }
    std::vector<Transition> moves;
    collect(m, out_edges[trace.last.state], trace.last, kEpsilonLetter, moves);
    if (pos < letters.size()) collect(m, out_edges[trace.last.state], trace.last, letters[pos], moves);
    if (moves.size() > 1) throw NondeterminismError(trace.last.state, moves[0].edge, moves[1].edge);
    if (moves.empty()) {
      trace.stop = TraceStop::Stuck;
      break;
    }
    if (trace.steps.size() >= caps.max_steps) {
      trace.stop = TraceStop::CapExceeded;
      trace.cap = CapKind::Steps;
      break;
    }
    if (moves[0].target.tree.edge_count() > caps.max_tree_edges) {
      trace.stop = TraceStop::CapExceeded;
      trace.cap = CapKind::TreeEdges;
      break;
    }
    if (m.edges[moves[0].edge].input != kEpsilonLetter) ++pos;
    trace.steps.push_back({moves[0].edge, trace.last, moves[0].target});
    trace.last = std::move(moves[0].target);
  }
  trace.consumed = pos;
  return trace;
}

}  // namespace nsa
