#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nsa {

// Memory symbols are indices into a machine's memory alphabet.
using Symbol = int;
inline constexpr Symbol kEpsilonSymbol = -1;

enum class OpKind { Down, Up, Push, Pop, Stay };

// A generator of the stack-operation monoid, or the identity (Stay).
struct StackOp {
  OpKind kind = OpKind::Stay;
  Symbol symbol = kEpsilonSymbol;

  static constexpr StackOp down(Symbol x) { return {OpKind::Down, x}; }
  static constexpr StackOp up(Symbol x) { return {OpKind::Up, x}; }
  static constexpr StackOp push(Symbol x) { return {OpKind::Push, x}; }
  static constexpr StackOp pop(Symbol x) { return {OpKind::Pop, x}; }
  static constexpr StackOp stay() { return {OpKind::Stay, kEpsilonSymbol}; }

  friend bool operator==(const StackOp&, const StackOp&) = default;
};

/// An ordered rooted tree with labelled edges and a distinguished vertex.
///
/// Vertices are stored in creation order, which is always a depth-first
/// order of the tree: vertex 0 is the root, a new vertex is appended as the
/// latest child of a vertex on the root-to-latest path, and only the latest
/// vertex is ever removed. Two trees are equal iff they have the same
/// labelled shape and the same distinguished vertex.
class MemoryTree {
 public:
  /// The single-vertex tree with the pointer at the root.
  MemoryTree();

  /// Builds a tree from raw parts without checking anything; pair with
  /// validate() when the parts come from outside.
  static MemoryTree from_parts(std::vector<int> parent, std::vector<Symbol> label,
                               int distinguished);

  std::size_t vertex_count() const { return parent_.size(); }
  std::size_t edge_count() const { return parent_.size() - 1; }
  int distinguished() const { return distinguished_; }
  int latest() const { return static_cast<int>(parent_.size()) - 1; }
  int parent(int v) const { return parent_[v]; }
  Symbol label(int v) const { return label_[v]; }
  int depth(int v) const;

  /// Label of the inedge of the distinguished vertex; epsilon at the root.
  Symbol current_symbol() const { return label_[distinguished_]; }
  bool is_leaf(int v) const;
  bool is_empty() const { return parent_.size() == 1; }

  /// Vertices from the root to the latest vertex.
  std::vector<int> spine() const;

  /// True when the tree has a single branch, i.e. is a stack.
  bool is_single_branch() const;

  /// True when `prefix` is an initial segment of this tree: its vertices are
  /// the first vertices of this tree with the same parents and labels. The
  /// distinguished vertex is ignored.
  bool extends(const MemoryTree& prefix) const;

  /// Preorder (label, depth) pairs followed by the distinguished index.
  std::string canonical() const;

  const std::vector<int>& parents() const { return parent_; }
  const std::vector<Symbol>& labels() const { return label_; }

  friend bool operator==(const MemoryTree&, const MemoryTree&) = default;

  std::size_t hash() const;

 private:
  friend std::optional<MemoryTree> apply(StackOp op, const MemoryTree& t);

  std::vector<int> parent_;
  std::vector<Symbol> label_;
  int distinguished_ = 0;
};

MemoryTree empty_tree();

/// Applies a monoid generator. Returns nullopt where the partial map is
/// undefined (the monoid's zero), never throws.
std::optional<MemoryTree> apply(StackOp op, const MemoryTree& t);

/// Left-to-right composition of `ops`; nullopt as soon as one step fails.
std::optional<MemoryTree> apply_word(std::span<const StackOp> ops, MemoryTree t);

/// True when `op` is defined on `t`, without building the result.
bool is_defined(StackOp op, const MemoryTree& t);

enum class TreeViolation {
  NoRoot,
  RootHasParent,
  ParentNotEarlier,
  NotDepthFirst,
  EpsilonEdgeLabel,
  DistinguishedOutOfRange,
  DistinguishedOffSpine,
};

std::string to_string(TreeViolation v);

/// Every invariant a memory tree must satisfy; empty iff the tree is valid.
std::vector<TreeViolation> validate(const MemoryTree& t);

/// Edge list `parent child label` per line with `*` after the distinguished
/// vertex. Debug output only.
std::string to_debug_string(const MemoryTree& t,
                            std::span<const std::string> symbol_names);

/// Branch word with the state name spliced in at the pointer, e.g. "yx3x" for
/// the branch yxx pointed at depth two; "ε1" for the empty tree. Trees with
/// more than one branch fall back to their canonical form.
std::string branch_name(const MemoryTree& t, std::span<const std::string> symbol_names,
                        const std::string& state);

}  // namespace nsa

template <>
struct std::hash<nsa::MemoryTree> {
  std::size_t operator()(const nsa::MemoryTree& t) const noexcept { return t.hash(); }
};
