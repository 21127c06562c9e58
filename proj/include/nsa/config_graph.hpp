#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nsa/acceptance.hpp"
#include "nsa/group_oracle.hpp"
#include "nsa/machine.hpp"

namespace nsa {

/// Exploration limits. Every flag computed on a ConfigGraph is relative to
/// the horizon it was built with.
struct Horizon {
  std::size_t max_tree_edges = 8;
  std::size_t max_vertices = 200'000;
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();
};

struct CgEdge {
  int source = 0;
  int target = 0;
  Letter label = kEpsilonLetter;
  int machine_edge = -1;
};

/// The configurations reachable from (initial, empty tree) within a horizon.
struct ConfigGraph {
  std::vector<Configuration> vertices;  // breadth-first discovery order
  std::vector<CgEdge> edges;
  std::vector<std::size_t> depth;
  /// Reaches an accepting configuration inside the explored graph.
  std::vector<bool> coaccessible;
  /// Some move out of the vertex led beyond the horizon, or the vertex was
  /// never expanded.
  std::vector<bool> truncated;
  Horizon horizon;
  bool hit_horizon = false;
  std::unordered_map<Configuration, int> index;

  std::optional<int> find(const Configuration& c) const;
  std::vector<std::vector<int>> out_edges() const;
  std::vector<std::vector<int>> in_edges() const;
};

ConfigGraph build(const Machine& m, const Horizon& horizon = {});

struct DegreeViolation {
  int vertex = -1;
  std::string reason;
};

/// Each configuration has either exactly one epsilon move and nothing else,
/// or no epsilon move and at most one move per letter. Moves leading beyond
/// the horizon count too.
std::optional<DegreeViolation> check_degrees(const ConfigGraph& cg, const Machine& m);

struct EpsilonRun {
  bool bounded = true;
  std::size_t length = 0;
};

/// Longest directed path of epsilon edges in the explored graph; unbounded
/// when the explored graph has an epsilon cycle.
EpsilonRun max_eps_run(const ConfigGraph& cg);

struct ProjectionViolation {
  int vertex = -1;
  Word first_path;
  Word second_path;
};

struct Projection {
  /// Group element per vertex; empty for vertices not co-accessible within
  /// the horizon, which the covering map does not cover.
  std::vector<std::optional<group::Element>> image;
  std::vector<ProjectionViolation> violations;
  std::size_t checked_edges = 0;
};

/// Maps each co-accessible vertex to the element its breadth-first
/// discovery path spells, then checks every explored edge between such
/// vertices. Throws std::invalid_argument when a machine letter is not a
/// generator of the oracle.
Projection project(const ConfigGraph& cg, const Machine& m, const group::GroupOracle& oracle);

enum class LiftStatus { Lifted, Stuck, CapExceeded, Nondeterministic };
std::string to_string(LiftStatus s);

struct Lift {
  LiftStatus status = LiftStatus::Lifted;
  /// Position of the letter that could not be read (Stuck).
  std::size_t position = 0;
  std::vector<Configuration> path;  // starts at (initial, empty tree)
  std::vector<Letter> labels;       // labels[i] leads from path[i] to path[i+1]
};

/// The path of a deterministic machine from the initial configuration that
/// reads `w`, taking forced epsilon moves between letters and stopping
/// right after the last letter.
Lift lift_path(const Machine& m, const Word& w, const ResourceCaps& caps = {});

/// Deterministic Graphviz output with vertices named by branch_name().
std::string export_dot(const ConfigGraph& cg, const Machine& m);

}  // namespace nsa
