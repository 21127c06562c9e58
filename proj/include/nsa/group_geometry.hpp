#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nsa/group_oracle.hpp"

namespace nsa::group {

/// A metric ball in the Cayley graph, vertices in breadth-first order.
struct CayleyWindow {
  Element center;
  std::size_t radius = 0;
  std::vector<Element> vertices;
  std::vector<std::size_t> distance;  // from center
  /// neighbor[v * generator_count + g] = index of v*g, or -1 outside the ball.
  std::vector<int> neighbor;
  std::size_t generator_count = 0;
  std::unordered_map<Element, int> index;

  std::size_t size() const { return vertices.size(); }
  std::vector<int> boundary() const;
};

inline constexpr std::size_t kDefaultWindowCap = 5'000'000;

/// Throws std::length_error when the ball would exceed `max_vertices`.
CayleyWindow ball(const GroupOracle& g, const Word& center, std::size_t radius,
                  std::size_t max_vertices = kDefaultWindowCap);

/// Largest radius up to `max_radius` whose ball around the identity has at
/// most `max_vertices` elements.
std::size_t fitting_radius(const GroupOracle& g, std::size_t max_radius, std::size_t max_vertices);

struct SeparatorReport {
  std::size_t cut_size = 0;
  std::vector<Element> cut_set;
  /// Some cut vertex lies within one step of the window boundary, so the
  /// cut may owe its size to the window rather than to the group.
  bool window_limited = false;
  /// Vertex-disjoint paths found by the flow; equals cut_size.
  std::size_t disjoint_paths = 0;
  /// The balls fall apart after removing cut_set (checked by search).
  bool verified = false;
};

/// Minimum vertex cut between the radius-r balls around c1 and c2 inside
/// the window of radius `window_radius` around the identity. Throws
/// std::invalid_argument when the balls are closer than distance 2 or do
/// not fit in the window.
SeparatorReport min_separator(const GroupOracle& g, const Word& c1, const Word& c2, std::size_t r,
                              std::size_t window_radius, std::size_t max_vertices = kDefaultWindowCap);

struct ProbeCell {
  std::size_t radius = 0;
  Word center;
  std::optional<SeparatorReport> report;
  std::string error;
};

enum class Trend { Constant, Increasing, Decreasing, Mixed, Insufficient };
std::string to_string(Trend t);

struct ProbeTable {
  std::vector<ProbeCell> cells;
  /// (radius, largest cut over the centers) for radii with any result
  std::vector<std::pair<std::size_t, std::size_t>> max_cut;
  Trend trend = Trend::Insufficient;
};

/// Separates B_r(1) from B_r(c) for every radius and center. Failing cells
/// keep their error and the probe continues. Centers equal to the identity
/// are skipped.
ProbeTable narrowness_probe(const GroupOracle& g, const std::vector<std::size_t>& radii,
                            const std::vector<Word>& centers, std::size_t window_radius);

struct EndsReport {
  std::size_t unbounded_components = 0;
  std::size_t finite_components = 0;
  std::vector<std::size_t> unbounded_sizes;
  std::vector<std::size_t> finite_sizes;
};

/// Components of (window minus ball of radius r) around the identity;
/// those reaching the window boundary count as unbounded.
EndsReport ends_probe(const GroupOracle& g, std::size_t r, std::size_t window_radius,
                      std::size_t max_vertices = kDefaultWindowCap);

struct QiViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t source_distance = 0;
  std::size_t target_distance = 0;
};

struct QiReport {
  std::vector<QiViolation> violations;
  /// Window vertices farther than k from every image; only filled when a
  /// density window is requested.
  std::vector<Element> uncovered;
};

/// Checks (1/k) d(x,y) - k <= d(f x, f y) <= k d(x,y) + k on every pair of
/// samples, and optionally that the images are k-dense in the target window
/// of the given radius.
QiReport qi_check(const std::vector<std::pair<Word, Word>>& samples, double k,
                  const GroupOracle& source, const GroupOracle& target,
                  std::optional<std::size_t> density_window = std::nullopt);

}  // namespace nsa::group
