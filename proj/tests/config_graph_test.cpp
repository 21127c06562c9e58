#include <gtest/gtest.h>

#include "nsa/config_graph.hpp"
#include "support.hpp"

using namespace nsa;
using namespace testing_support;

namespace {

Configuration cfg(const Machine& m, const std::string& state, const std::vector<std::string>& branch) {
  MemoryTree t;
  for (const auto& s : branch) t = *apply(StackOp::push(*m.symbol_index(s)), t);
  return {*m.state_index(state), t};
}

bool has_edge(const ConfigGraph& cg, const Configuration& a, const Configuration& b, Letter label) {
  auto s = cg.find(a), t = cg.find(b);
  if (!s || !t) return false;
  for (const auto& e : cg.edges)
    if (e.source == *s && e.target == *t && e.label == label) return true;
  return false;
}

}  // namespace

TEST(ConfigGraph, Fig2Chain) {
  auto m = load("fig2.nsa");
  auto cg = build(m, Horizon{4});
  const Letter a = *m.letter_index("a");
  EXPECT_TRUE(has_edge(cg, cfg(m, "1", {}), cfg(m, "2", {"y"}), kEpsilonLetter));
  EXPECT_TRUE(has_edge(cg, cfg(m, "2", {"y"}), cfg(m, "2", {"y", "x"}), a));
  EXPECT_TRUE(has_edge(cg, cfg(m, "2", {"y", "x"}), cfg(m, "2", {"y", "x", "x"}), a));
  EXPECT_TRUE(cg.hit_horizon);

  auto small = build(m, Horizon{2});
  EXPECT_TRUE(small.find(cfg(m, "2", {"y", "x"})));
  EXPECT_FALSE(small.find(cfg(m, "2", {"y", "x", "x"})));
}

TEST(ConfigGraph, NoEdges) {
  auto yes = build(parse_machine("states: s\nstart: s\nfinal: s\n"));
  ASSERT_EQ(yes.vertices.size(), 1u);
  EXPECT_TRUE(yes.coaccessible[0]);
  EXPECT_FALSE(yes.hit_horizon);
  auto no = build(parse_machine("states: s t\nstart: s\nfinal: t\n"));
  ASSERT_EQ(no.vertices.size(), 1u);
  EXPECT_FALSE(no.coaccessible[0]);
}

TEST(ConfigGraph, EdgesMirrorMachineEdges) {
  for (auto name : {"fig2.nsa", "anbn.nsa", "dyck.nsa", "zword.nsa"}) {
    auto m = load(name);
    auto cg = build(m, Horizon{6});
    for (const auto& e : cg.edges) {
      const auto& me = m.edges[e.machine_edge];
      const auto& s = cg.vertices[e.source];
      const auto& t = cg.vertices[e.target];
      EXPECT_EQ(me.source, s.state);
      EXPECT_EQ(me.target, t.state);
      EXPECT_EQ(me.input, e.label);
      EXPECT_EQ(apply(me.op, s.tree), t.tree);
      EXPECT_LE(t.tree.edge_count(), 6u);
    }
    // breadth-first depths are consistent with the edges
    for (const auto& e : cg.edges) EXPECT_LE(cg.depth[e.target], cg.depth[e.source] + 1);
    for (std::size_t v = 1; v < cg.vertices.size(); ++v) EXPECT_GT(cg.depth[v], 0u);
  }
}

TEST(ConfigGraph, CoaccessibleMeansAnAcceptingVertexIsReachable) {
  for (auto name : {"fig2.nsa", "anbn.nsa", "zword.nsa"}) {
    auto m = load(name);
    auto cg = build(m, Horizon{5});
    const auto out = cg.out_edges();
    for (std::size_t v = 0; v < cg.vertices.size(); ++v) {
      std::vector<bool> seen(cg.vertices.size());
      std::vector<int> todo{static_cast<int>(v)};
      seen[v] = true;
      bool found = false;
      while (!todo.empty() && !found) {
        int u = todo.back();
        todo.pop_back();
        found = is_accepting(m, cg.vertices[u]);
        for (int e : out[u])
          if (!seen[cg.edges[e].target]) seen[cg.edges[e].target] = true, todo.push_back(cg.edges[e].target);
      }
      EXPECT_EQ(cg.coaccessible[v], found) << name << " vertex " << v;
    }
  }
}

TEST(ConfigGraph, Degrees) {
  for (auto name : {"fig2.nsa", "anbn.nsa", "dyck.nsa", "zword.nsa", "anbn_sink.nsa"}) {
    auto m = load(name);
    EXPECT_FALSE(check_degrees(build(m, Horizon{6}), m)) << name;
  }
  auto nd = parse_machine("states: s t\nstart: s\ninput: a\nmemory: x\nedge: s t push x a\nedge: s s push x a\n");
  auto v = check_degrees(build(nd), nd);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->vertex, 0);
  auto loop = parse_machine("states: s\nstart: s\nedge: s s stay eps\n");
  EXPECT_FALSE(check_degrees(build(loop), loop));
}

TEST(ConfigGraph, EpsilonRuns) {
  auto fig2 = build(load("fig2.nsa"), Horizon{4});
  auto run = max_eps_run(fig2);
  EXPECT_TRUE(run.bounded);
  EXPECT_EQ(run.length, 2u);  // (4,y) -> (1,T0) -> (2,y)

  auto loop = parse_machine("states: s\nstart: s\nedge: s s stay eps\n");
  EXPECT_FALSE(max_eps_run(build(loop)).bounded);

  auto none = build(load("anbn.nsa"), Horizon{4});
  auto r = max_eps_run(none);
  EXPECT_TRUE(r.bounded);
  EXPECT_EQ(r.length, 0u);
}

TEST(Lift, Fig2) {
  auto m = load("fig2.nsa");
  auto aa = lift_path(m, word_from_text("aa"));
  EXPECT_EQ(aa.status, LiftStatus::Lifted);
  ASSERT_EQ(aa.path.size(), 4u);
  EXPECT_EQ(aa.path.back(), cfg(m, "2", {"y", "x", "x"}));
  EXPECT_EQ(aa.labels, (std::vector<Letter>{kEpsilonLetter, 0, 0}));

  auto none = lift_path(m, Word{});
  EXPECT_EQ(none.status, LiftStatus::Lifted);
  EXPECT_EQ(none.path.size(), 1u);

  auto ba = lift_path(m, word_from_text("ba"));
  EXPECT_EQ(ba.status, LiftStatus::Stuck);
  EXPECT_EQ(ba.position, 0u);

  auto nd = parse_machine("states: s t\nstart: s\ninput: a\nmemory: x\nedge: s t push x a\nedge: s s push x a\n");
  EXPECT_EQ(lift_path(nd, word_from_text("a")).status, LiftStatus::Nondeterministic);
}

TEST(Lift, PrefixOfTheAcceptingComputation) {
  auto m = load("fig2.nsa");
  for (const auto& s : block_language(10)) {
    const auto w = word_from_text(s);
    auto lift = lift_path(m, w);
    ASSERT_EQ(lift.status, LiftStatus::Lifted) << s;
    auto r = accepts(m, w);
    ASSERT_TRUE(r.witness);
    std::vector<Configuration> replay{{m.initial, empty_tree()}};
    for (int e : r.witness->path)
      replay.push_back({m.edges[e].target, *apply(m.edges[e].op, replay.back().tree)});
    ASSERT_LE(lift.path.size(), replay.size()) << s;
    EXPECT_TRUE(std::equal(lift.path.begin(), lift.path.end(), replay.begin())) << s;
    // what is left is a run of epsilon moves
    for (std::size_t i = lift.path.size() - 1; i < r.witness->path.size(); ++i)
      EXPECT_EQ(m.edges[r.witness->path[i]].input, kEpsilonLetter) << s;
  }
}

TEST(Project, ZWordProblem) {
  auto m = load("zword.nsa");
  auto g = group::make_oracle("free 1");
  auto cg = build(m, Horizon{10});
  auto p = project(cg, m, *g);
  EXPECT_TRUE(p.violations.empty());
  EXPECT_GT(p.checked_edges, 30u);
  EXPECT_EQ(p.image[0], g->identity());
  // (pos, P0 p^k) sits over a^(k+1)
  for (std::size_t k = 0; k < 6; ++k) {
    std::vector<std::string> branch{"P0"};
    branch.insert(branch.end(), k, "p");
    auto v = cg.find(cfg(m, "pos", branch));
    ASSERT_TRUE(v);
    EXPECT_EQ(p.image[*v], g->canonical(Word(k + 1, "a")));
  }
}

TEST(Project, Fig2OntoTrivialGroup) {
  auto m = load("fig2.nsa");
  auto g = group::make_oracle("finite trivial_abcd.table", FIXTURE_DIR);
  auto cg = build(m, Horizon{4});
  auto p = project(cg, m, *g);
  auto again = project(cg, m, *g);
  EXPECT_EQ(p.violations.size(), again.violations.size());
  EXPECT_EQ(p.checked_edges, again.checked_edges);
  for (const auto& x : p.image) {
    if (x) {
      EXPECT_EQ(*x, g->identity());
    }
  }
}

TEST(Project, ReportsTwoPathsWithDifferentLabels) {
  auto m = parse_machine("states: s t\nstart: s\nfinal: s\ninput: a b\nmemory: x\n"
                         "edge: s t push x a\nedge: s t push x b\nedge: t s pop x eps\n");
  auto g = group::make_oracle("free 2");
  auto p = project(build(m), m, *g);
  // t is first reached over a, so both the b edge and the return pop disagree
  ASSERT_EQ(p.violations.size(), 2u);
  EXPECT_NE(g->canonical(p.violations[0].first_path), g->canonical(p.violations[0].second_path));
  auto z3 = group::make_oracle("abelian 1");
  EXPECT_THROW(project(build(m), m, *z3), std::invalid_argument);
}

TEST(Dot, Fig2) {
  auto m = load("fig2.nsa");
  auto cg = build(m, Horizon{4});
  auto dot = export_dot(cg, m);
  EXPECT_EQ(dot, export_dot(build(m, Horizon{4}), m));
  for (auto name : {"ε1", "y2", "yx2", "yxx2", "y3x", "yx4", "yx3x", "yxx4"})
    EXPECT_NE(dot.find(std::string("label=\"") + name + "\""), std::string::npos) << name;
  auto lone = parse_machine("states: s\nstart: s\n");
  auto one = export_dot(build(lone), lone);
  EXPECT_NE(one.find("n0 ["), std::string::npos);
  EXPECT_EQ(one.find("n1"), std::string::npos);
}
