#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nsa/config_graph.hpp"
#include "nsa/machine.hpp"

namespace nsa {

/// class_of[v] for every explored vertex; classes numbered by their
/// smallest member.
struct Partition {
  std::vector<int> class_of;
  std::size_t class_count = 0;
};

/// (p,T) ~ (q,T) when an undirected explored path joins them along which
/// every tree extends T. Throws std::invalid_argument for a machine with
/// down or up edges unless `force` is set.
Partition nonerasing_classes(const ConfigGraph& cg, const Machine& m, bool force = false);

struct QuotientGraph {
  std::vector<std::vector<int>> classes;  // members, ascending
  std::vector<int> class_of;
  /// Unoriented, no loops, no repeats; pairs (a, b) with a < b, sorted.
  std::vector<std::pair<int, int>> edges;
  /// Largest undirected distance in the explored graph between two members.
  std::vector<std::size_t> class_diameter;
};

QuotientGraph quotient(const ConfigGraph& cg, const Partition& p);

struct TreeCheck {
  bool tree = true;
  /// Classes along a simple cycle, first not repeated at the end.
  std::vector<int> cycle;
};

TreeCheck check_tree(const QuotientGraph& q);

std::size_t quotient_distortion(const QuotientGraph& q);

/// A simple cycle with at least `min_length` vertices in the explored graph
/// with orientation and labels forgotten, or empty when none is found. Each
/// edge is tried in order with the shortest cycle through it.
std::vector<int> find_simple_cycle(const ConfigGraph& cg, std::size_t min_length = 4);

std::string export_dot(const QuotientGraph& q, const ConfigGraph& cg, const Machine& m);

}  // namespace nsa
