#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsa/machine.hpp"
#include "nsa/memory_tree.hpp"

namespace nsa {

/// A (state, memory tree) pair.
struct Configuration {
  int state = 0;
  MemoryTree tree;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct Transition {
  int edge = -1;
  Configuration target;
};

/// Successors of (state, tree) along edges whose input equals `letter`
/// (pass kEpsilonLetter for the epsilon moves) and whose operation is
/// defined on `tree`. Empty means stuck.
std::vector<Transition> step(const Machine& m, int state, const MemoryTree& tree, Letter letter);

/// Both the epsilon moves and the moves reading `letter`.
std::vector<Transition> applicable(const Machine& m, const Configuration& c, Letter letter);

bool is_accepting(const Machine& m, const Configuration& c);

/// A path from the initial state, its input word and its outcome.
struct Computation {
  std::vector<int> path;
  Word word;
  MemoryTree outcome;
};

enum class Verdict { Accepted, Rejected, CapExceeded };
enum class CapKind { None, Steps, TreeEdges, Frontier };

std::string to_string(Verdict v);
std::string to_string(CapKind c);

struct AcceptResult {
  Verdict verdict = Verdict::Rejected;
  std::optional<Computation> witness;
  CapKind cap = CapKind::None;
};

/// Breadth-first search over (state, tree, input position). Accepting means
/// the whole word is read and the search reaches a final state with the
/// empty tree. The verdict is CapExceeded when a resource cap pruned the
/// search before it either accepted or ran out of configurations.
AcceptResult accepts(const Machine& m, const Word& word, const ResourceCaps& caps = {});
AcceptResult accepts(const Machine& m, const LetterWord& word, const ResourceCaps& caps = {});

class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(CapKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  CapKind kind() const { return kind_; }

 private:
  CapKind kind_;
};

/// Every accepted word of length at most `max_len`, in shortlex order.
/// Throws CapExceededError if any epsilon closure hits a cap, since the
/// result would then be unsound.
std::vector<Word> enumerate_accepted(const Machine& m, std::size_t max_len,
                                     const ResourceCaps& caps = {});

struct TraceStep {
  int edge = -1;
  Configuration before;
  Configuration after;
};

enum class TraceStop { Accepting, Stuck, CapExceeded };
std::string to_string(TraceStop s);

struct Trace {
  std::vector<TraceStep> steps;
  Configuration last;
  std::size_t consumed = 0;
  TraceStop stop = TraceStop::Stuck;
  CapKind cap = CapKind::None;
};

class NondeterminismError : public std::runtime_error {
 public:
  NondeterminismError(int state, int edge_a, int edge_b);
  int state;
  int edge_a;
  int edge_b;
};

/// The unique maximal computation of a deterministic machine reading a
/// prefix of `word`. Epsilon moves after the last letter are followed until
/// the machine is stuck or reaches an accepting configuration. A letter
/// outside the input alphabet ends the readable prefix.
Trace run_trace(const Machine& m, const Word& word, const ResourceCaps& caps = {});

}  // namespace nsa

template <>
struct std::hash<nsa::Configuration> {
  std::size_t operator()(const nsa::Configuration& c) const noexcept {
    return c.tree.hash() * 31u + static_cast<std::size_t>(c.state);
  }
};
