#include "nsa/memory_tree.hpp"

#include <sstream>

namespace nsa {

MemoryTree::MemoryTree() : parent_{-1}, label_{kEpsilonSymbol} {}

MemoryTree MemoryTree::from_parts(std::vector<int> parent, std::vector<Symbol> label,
                                  int distinguished) {
  MemoryTree t;
  t.parent_ = std::move(parent);
  t.label_ = std::move(label);
  t.distinguished_ = distinguished;
  return t;
}

int MemoryTree::depth(int v) const {
  int d = 0;
  while (parent_[v] >= 0) {
    v = parent_[v];
    ++d;
  }
  return d;
}

bool MemoryTree::is_leaf(int v) const {
  // In depth-first order a vertex with children is immediately followed by
  // its first child.
  const auto next = static_cast<std::size_t>(v) + 1;
  return next >= parent_.size() || parent_[next] != v;
}

std::vector<int> MemoryTree::spine() const {
  std::vector<int> path;
  for (int v = latest(); v >= 0; v = parent_[v]) path.push_back(v);
  return {path.rbegin(), path.rend()};
}

bool MemoryTree::is_single_branch() const {
  for (std::size_t v = 1; v < parent_.size(); ++v)
    if (parent_[v] != static_cast<int>(v) - 1) return false;
  return true;
}

bool MemoryTree::extends(const MemoryTree& prefix) const {
  const auto n = prefix.parent_.size();
  if (n > parent_.size()) return false;
  for (std::size_t v = 0; v < n; ++v)
    if (parent_[v] != prefix.parent_[v] || label_[v] != prefix.label_[v]) return false;
  return true;
}

std::string MemoryTree::canonical() const {
  std::string out;
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    out += std::to_string(label_[v]);
    out += ':';
    out += std::to_string(depth(static_cast<int>(v)));
    out += ' ';
  }
  out += '*';
  out += std::to_string(distinguished_);
  return out;
}

std::size_t MemoryTree::hash() const {
  std::size_t h = std::hash<int>{}(distinguished_);
  auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    mix(static_cast<std::size_t>(parent_[v] + 1));
    mix(static_cast<std::size_t>(label_[v] + 1));
  }
  return h;
}

MemoryTree empty_tree() { return MemoryTree{}; }

namespace {

int latest_child(const MemoryTree& t, int v) {
  for (int u = t.latest(); u > v; --u)
    if (t.parent(u) == v) return u;
  return -1;
}

}  // namespace

bool is_defined(StackOp op, const MemoryTree& t) {
  const int v = t.distinguished();
  const Symbol y = t.current_symbol();
  switch (op.kind) {
    case OpKind::Down:
      return op.symbol == y && v != 0;
    case OpKind::Up:
      return op.symbol == y && !t.is_leaf(v);
    case OpKind::Push:
    case OpKind::Stay:
      return true;
    case OpKind::Pop:
      return op.symbol == y && v != 0 && t.is_leaf(v);
  }
  return false;
}

std::optional<MemoryTree> apply(StackOp op, const MemoryTree& t) {
  if (!is_defined(op, t)) return std::nullopt;
  MemoryTree out = t;
  const int v = t.distinguished_;
  switch (op.kind) {
    case OpKind::Down:
      out.distinguished_ = t.parent_[v];
      break;
    case OpKind::Up:
      out.distinguished_ = latest_child(t, v);
      break;
    case OpKind::Push:
      out.parent_.push_back(v);
      out.label_.push_back(op.symbol);
      out.distinguished_ = out.latest();
      break;
    case OpKind::Pop:
      // a leaf on the root-to-latest path is the latest vertex
      out.parent_.pop_back();
      out.label_.pop_back();
      out.distinguished_ = t.parent_[v];
      break;
    case OpKind::Stay:
      break;
  }
  return out;
}

std::optional<MemoryTree> apply_word(std::span<const StackOp> ops, MemoryTree t) {
  for (const auto& op : ops) {
    auto next = apply(op, t);
    if (!next) return std::nullopt;
    t = std::move(*next);
  }
  return t;
}

std::string to_string(TreeViolation v) {
  switch (v) {
    case TreeViolation::NoRoot: return "no-root";
    case TreeViolation::RootHasParent: return "root-has-parent";
    case TreeViolation::ParentNotEarlier: return "parent-not-earlier";
    case TreeViolation::NotDepthFirst: return "not-depth-first";
    case TreeViolation::EpsilonEdgeLabel: return "epsilon-edge-label";
    case TreeViolation::DistinguishedOutOfRange: return "distinguished-out-of-range";
    case TreeViolation::DistinguishedOffSpine: return "distinguished-off-spine";
  }
  return "unknown";
}

std::vector<TreeViolation> validate(const MemoryTree& t) {
  std::vector<TreeViolation> out;
  const auto& parent = t.parents();
  const auto& label = t.labels();
  const int n = static_cast<int>(parent.size());
  if (n == 0 || label.size() != parent.size()) return {TreeViolation::NoRoot};
  if (parent[0] != -1) out.push_back(TreeViolation::RootHasParent);

  auto is_ancestor_or_self = [&](int a, int v) {
    for (; v >= 0; v = parent[v])
      if (v == a) return true;
    return false;
  };

  bool order_ok = true;
  for (int v = 1; v < n; ++v) {
    if (parent[v] < 0 || parent[v] >= v) {
      out.push_back(TreeViolation::ParentNotEarlier);
      order_ok = false;
      break;
    }
    if (label[v] == kEpsilonSymbol || label[v] < 0) {
      out.push_back(TreeViolation::EpsilonEdgeLabel);
      break;
    }
  }
  if (order_ok) {
    // Depth-first: each new vertex hangs off the path to the previous one.
    for (int v = 1; v < n; ++v) {
      if (!is_ancestor_or_self(parent[v], v - 1)) {
        out.push_back(TreeViolation::NotDepthFirst);
        break;
      }
    }
  }

  const int d = t.distinguished();
  if (d < 0 || d >= n) {
    out.push_back(TreeViolation::DistinguishedOutOfRange);
  } else if (order_ok && !is_ancestor_or_self(d, n - 1)) {
    out.push_back(TreeViolation::DistinguishedOffSpine);
  }
  return out;
}

namespace {

std::string symbol_name(Symbol s, std::span<const std::string> names) {
  if (s == kEpsilonSymbol) return "ε";
  if (s >= 0 && static_cast<std::size_t>(s) < names.size()) return names[s];
  return "#" + std::to_string(s);
}

}  // namespace

std::string to_debug_string(const MemoryTree& t, std::span<const std::string> symbol_names) {
  std::ostringstream os;
  if (t.distinguished() == 0) os << "v0 *\n";
  for (int v = 1; v <= t.latest(); ++v) {
    os << 'v' << t.parent(v) << " v" << v << ' ' << symbol_name(t.label(v), symbol_names);
    if (v == t.distinguished()) os << " *";
    os << '\n';
  }
  return os.str();
}

std::string branch_name(const MemoryTree& t, std::span<const std::string> symbol_names,
                        const std::string& state) {
  if (!t.is_single_branch()) return t.canonical() + "/" + state;
  if (t.is_empty()) return "ε" + state;
  std::string out;
  for (int v = 1; v <= t.latest(); ++v) {
    out += symbol_name(t.label(v), symbol_names);
    if (v == t.distinguished()) out += state;
  }
  if (t.distinguished() == 0) out = state + out;
  return out;
}

}  // namespace nsa
