#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <unordered_map>

#include "nsa/memory_tree.hpp"
#include "support.hpp"

using namespace nsa;

namespace {

constexpr Symbol x = 0, y = 1;

// Reference model: an explicit ordered tree plus the child-index path from
// the root to the pointer. Ops follow the definitions literally.
struct RefNode {
  Symbol label = kEpsilonSymbol;
  std::vector<std::unique_ptr<RefNode>> children;
};

struct RefTree {
  std::unique_ptr<RefNode> root = std::make_unique<RefNode>();
  std::vector<std::size_t> path;

  RefNode* at() const {
    RefNode* n = root.get();
    for (auto i : path) n = n->children[i].get();
    return n;
  }

  bool apply(StackOp op) {
    RefNode* cur = at();
    switch (op.kind) {
      case OpKind::Stay: return true;
      case OpKind::Push:
        cur->children.push_back(std::make_unique<RefNode>());
        cur->children.back()->label = op.symbol;
        path.push_back(cur->children.size() - 1);
        return true;
      case OpKind::Down:
        if (path.empty() || cur->label != op.symbol) return false;
        path.pop_back();
        return true;
      case OpKind::Up:
        if (cur->label != op.symbol || cur->children.empty()) return false;
        path.push_back(cur->children.size() - 1);
        return true;
      case OpKind::Pop: {
        if (path.empty() || cur->label != op.symbol || !cur->children.empty()) return false;
        path.pop_back();
        at()->children.pop_back();
        return true;
      }
    }
    return false;
  }

  // Preorder parents and labels, and the preorder index of the pointer.
  void flatten(std::vector<int>& parent, std::vector<Symbol>& label, int& pointer) const {
    parent.clear();
    label.clear();
    pointer = -1;
    const RefNode* target = at();
    std::vector<std::pair<const RefNode*, int>> stack{{root.get(), -1}};
    while (!stack.empty()) {
      auto [n, p] = stack.back();
      stack.pop_back();
      const int id = static_cast<int>(parent.size());
      parent.push_back(p);
      label.push_back(n->label);
      if (n == target) pointer = id;
      for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back({it->get(), id});
    }
  }
};

std::vector<StackOp> generators(int alphabet) {
  std::vector<StackOp> ops{StackOp::stay(), StackOp::up(kEpsilonSymbol)};
  for (Symbol s = 0; s < alphabet; ++s) {
    ops.push_back(StackOp::push(s));
    ops.push_back(StackOp::pop(s));
    ops.push_back(StackOp::down(s));
    ops.push_back(StackOp::up(s));
  }
  return ops;
}

}  // namespace

TEST(MemoryTree, EmptyTree) {
  auto t = empty_tree();
  EXPECT_EQ(t.vertex_count(), 1u);
  EXPECT_EQ(t.edge_count(), 0u);
  EXPECT_EQ(t.current_symbol(), kEpsilonSymbol);
  EXPECT_TRUE(validate(t).empty());
  EXPECT_FALSE(apply(StackOp::down(x), t));
  EXPECT_FALSE(apply(StackOp::up(kEpsilonSymbol), t));
  EXPECT_FALSE(apply_word(std::vector{StackOp::pop(x)}, t));
}

TEST(MemoryTree, PointerAtDepthOne) {
  std::vector ops{StackOp::push(y), StackOp::push(x), StackOp::push(x), StackOp::down(x), StackOp::down(x)};
  auto t = apply_word(ops, empty_tree());
  ASSERT_TRUE(t);
  EXPECT_TRUE(t->is_single_branch());
  EXPECT_EQ(t->edge_count(), 3u);
  EXPECT_EQ(t->depth(t->distinguished()), 1);
  EXPECT_EQ(t->current_symbol(), y);
  const std::vector<std::string> names{"x", "y"};
  EXPECT_EQ(branch_name(*t, names, "2"), "y2xx");
}

TEST(MemoryTree, BranchNames) {
  const std::vector<std::string> names{"x", "y"};
  EXPECT_EQ(branch_name(empty_tree(), names, "1"), "ε1");
  std::vector ops{StackOp::push(y), StackOp::push(x), StackOp::push(x), StackOp::down(x)};
  auto t = apply_word(ops, empty_tree());
  ASSERT_TRUE(t);
  EXPECT_EQ(branch_name(*t, names, "3"), "yx3x");
}

TEST(MemoryTree, ApplyWord) {
  auto t0 = empty_tree();
  EXPECT_EQ(apply_word({}, t0), t0);
  // After D_x the pointer sits at the y-vertex, so U_x has nothing to read.
  std::vector bad{StackOp::push(y), StackOp::push(x), StackOp::down(x), StackOp::up(x), StackOp::pop(x),
                  StackOp::pop(y)};
  EXPECT_FALSE(apply_word(bad, t0));
  std::vector good{StackOp::push(y), StackOp::push(x), StackOp::down(x), StackOp::up(y), StackOp::pop(x),
                   StackOp::pop(y)};
  EXPECT_EQ(apply_word(good, t0), t0);
}

TEST(MemoryTree, UpMovesToLatestChild) {
  // root with children x (with child y) and x; up from root goes to the second
  std::vector ops{StackOp::push(x), StackOp::push(y), StackOp::down(y), StackOp::down(x), StackOp::push(x),
                  StackOp::down(x)};
  auto t = apply_word(ops, empty_tree());
  ASSERT_TRUE(t);
  EXPECT_FALSE(t->is_single_branch());
  auto u = apply(StackOp::up(kEpsilonSymbol), *t);
  ASSERT_TRUE(u);
  EXPECT_EQ(u->distinguished(), 3);
  // pop is undefined away from the latest leaf
  EXPECT_FALSE(apply(StackOp::pop(x), *t));
}

TEST(MemoryTree, ValidateCatchesBrokenParts) {
  EXPECT_TRUE(validate(MemoryTree::from_parts({-1, 0}, {kEpsilonSymbol, x}, 1)).empty());
  // pointer on vertex 1, latest is vertex 2 under the root: off the spine
  auto off = MemoryTree::from_parts({-1, 0, 0}, {kEpsilonSymbol, x, x}, 1);
  auto v = validate(off);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], TreeViolation::DistinguishedOffSpine);
  auto eps = validate(MemoryTree::from_parts({-1, 0}, {kEpsilonSymbol, kEpsilonSymbol}, 0));
  EXPECT_EQ(eps, std::vector{TreeViolation::EpsilonEdgeLabel});
  // vertex 2 hangs below vertex 1 after vertex 1's sibling subtree closed
  auto order = validate(MemoryTree::from_parts({-1, 0, 0, 1}, {kEpsilonSymbol, x, x, x}, 0));
  EXPECT_EQ(order, std::vector{TreeViolation::NotDepthFirst});
  EXPECT_TRUE(validate(*apply(StackOp::push(x), empty_tree())).empty());
}

TEST(MemoryTree, DebugString) {
  const std::vector<std::string> names{"x", "y"};
  auto t = *apply_word(std::vector{StackOp::push(y), StackOp::push(x), StackOp::down(x)}, empty_tree());
  EXPECT_EQ(to_debug_string(t, names), "v0 v1 y *\nv1 v2 x\n");
  EXPECT_EQ(to_debug_string(empty_tree(), names), "v0 *\n");
}

TEST(MemoryTree, AgreesWithReferenceModel) {
  std::mt19937 rng(7);
  const auto ops = generators(3);
  std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
  std::size_t defined = 0;
  for (int run = 0; run < 400; ++run) {
    RefTree ref;
    MemoryTree t;
    for (int s = 0; s < 60; ++s) {
      const StackOp op = ops[pick(rng)];
      auto next = apply(op, t);
      const bool ok = ref.apply(op);
      ASSERT_EQ(next.has_value(), ok);
      ASSERT_EQ(is_defined(op, t), ok);
      if (!ok) continue;
      ++defined;
      t = std::move(*next);
      std::vector<int> parent;
      std::vector<Symbol> label;
      int pointer;
      ref.flatten(parent, label, pointer);
      ASSERT_EQ(t.parents(), parent);
      ASSERT_EQ(t.labels(), label);
      ASSERT_EQ(t.distinguished(), pointer);
    }
  }
  EXPECT_GT(defined, 5000u);
}

TEST(MemoryTree, MonoidLaws) {
  std::mt19937 rng(20240101);
  const auto trees = testing_support::random_trees(rng, 12000, 3);
  const auto ops = generators(3);
  std::size_t violations = 0;
  for (const auto& op : ops) {
    std::unordered_map<MemoryTree, MemoryTree> preimage;
    for (const auto& t : trees) {
      auto r = apply(op, t);
      if (!r) continue;
      if (!validate(*r).empty()) ++violations;
      auto [it, fresh] = preimage.try_emplace(*r, t);
      if (!fresh && !(it->second == t)) ++violations;
    }
  }
  for (const auto& t : trees) {
    EXPECT_TRUE(validate(t).empty());
    for (Symbol s = 0; s < 3; ++s) {
      auto back = apply(StackOp::pop(s), *apply(StackOp::push(s), t));
      if (!back || !(*back == t)) ++violations;
    }
  }
  EXPECT_EQ(violations, 0u);
}
