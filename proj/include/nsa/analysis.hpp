#pragma once

#include <cstddef>
#include <vector>

#include "nsa/machine.hpp"

namespace nsa {

/// A pair of outedges of one state whose inputs compete (equal, or one of
/// them epsilon) and whose operations are defined on a common tree.
struct DeterminismConflict {
  int state = -1;
  int edge_a = -1;
  int edge_b = -1;
};

struct DeterminismReport {
  bool deterministic = true;
  DeterminismConflict conflict;
};

/// True when some memory tree lies in the domain of both operations.
///
/// The domain of every generator is a condition on the current symbol and
/// on whether the pointer is at a leaf (being at the root is the same as the
/// current symbol being epsilon), and every combination of those is
/// realised by some tree, so checking all combinations is exact.
bool domains_intersect(StackOp a, StackOp b, std::size_t alphabet_size);

/// Returns the first conflicting pair in edge order.
DeterminismReport check_deterministic(const Machine& m);

struct ErasingReport {
  bool bounded = true;
  /// Largest number of pop edges on an epsilon-input path.
  std::size_t k = 0;
  /// For unbounded erasing: the edges of an epsilon cycle through a pop.
  std::vector<int> cycle;
};

/// Syntactic bound on pops along epsilon-input paths of the machine graph.
/// Stack executability is ignored, exactly as in the definition.
ErasingReport check_limited_erasing(const Machine& m);

/// No down or up operations.
bool is_pushdown(const Machine& m);

}  // namespace nsa
