#include "nsa/analysis.hpp"

#include "nsa/graph_algo.hpp"

namespace nsa {

namespace {

bool in_domain(StackOp op, Symbol current, bool leaf) {
  switch (op.kind) {
    case OpKind::Down: return op.symbol == current && current != kEpsilonSymbol;
    case OpKind::Up: return op.symbol == current && !leaf;
    case OpKind::Push:
    case OpKind::Stay: return true;
    case OpKind::Pop: return op.symbol == current && current != kEpsilonSymbol && leaf;
  }
  return false;
}

}  // namespace

bool domains_intersect(StackOp a, StackOp b, std::size_t alphabet_size) {
  for (Symbol s = kEpsilonSymbol; s < static_cast<Symbol>(alphabet_size); ++s)
    for (bool leaf : {false, true})
      if (in_domain(a, s, leaf) && in_domain(b, s, leaf)) return true;
  return false;
}

DeterminismReport check_deterministic(const Machine& m) {
  const auto out = m.out_edges();
  for (int q = 0; q < static_cast<int>(out.size()); ++q) {
    const auto& es = out[q];
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        const Edge& a = m.edges[es[i]];
        const Edge& b = m.edges[es[j]];
        const bool compete =
            a.input == b.input || a.input == kEpsilonLetter || b.input == kEpsilonLetter;
        if (compete && domains_intersect(a.op, b.op, m.memory_alphabet.size()))
          return {false, {q, es[i], es[j]}};
      }
    }
  }
  return {};
}

ErasingReport check_limited_erasing(const Machine& m) {
  graph::ArcList g;
  g.vertex_count = m.states.size();
  std::vector<int> edge_of_arc;
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const Edge& edge = m.edges[e];
    if (edge.input != kEpsilonLetter) continue;
    g.add(edge.source, edge.target, edge.op.kind == OpKind::Pop ? 1 : 0);
    edge_of_arc.push_back(static_cast<int>(e));
  }
  auto path = graph::heaviest_path(g);
  ErasingReport report;
  if (path.positive_cycle) {
    report.bounded = false;
    for (int a : *path.positive_cycle) report.cycle.push_back(edge_of_arc[a]);
    return report;
  }
  report.k = static_cast<std::size_t>(path.weight);
  return report;
}

bool is_pushdown(const Machine& m) {
  for (const auto& e : m.edges)
    if (e.op.kind == OpKind::Down || e.op.kind == OpKind::Up) return false;
  return true;
}

}  // namespace nsa
