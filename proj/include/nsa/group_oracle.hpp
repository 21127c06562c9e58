#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsa/machine.hpp"

namespace nsa::group {

/// Opaque canonical form of a group element. Equal elements have equal
/// encodings, so it can key hash maps directly.
using Element = std::string;

enum class Family { Free, FreeAbelian, Finite, Product };

/// Word-problem oracle for a finitely generated group with formal inverses.
///
/// Generators come in pairs: index 2i is a generator and 2i + 1 its formal
/// inverse. Lowercase names are generators and the uppercase spelling of a
/// name is its inverse ("a"/"A", "b2"/"B2").
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  virtual Family family() const = 0;
  virtual Element identity() const = 0;
  /// Right multiplication by a generator.
  virtual Element multiply(const Element& g, int generator) const = 0;
  /// Word-metric length with respect to the generators.
  virtual std::size_t length(const Element& g) const = 0;
  virtual std::string describe(const Element& g) const = 0;
  /// The group spec this oracle was built from.
  virtual std::string spec() const = 0;

  const std::vector<std::string>& generators() const { return names_; }
  std::size_t generator_count() const { return names_.size(); }
  static int inverse(int generator) { return generator ^ 1; }
  std::optional<int> generator_index(std::string_view name) const;

  /// Throws std::invalid_argument on an unknown generator name.
  Element canonical(const Word& w) const;
  bool is_identity(const Word& w) const { return canonical(w) == identity(); }
  Word inverse_word(const Word& w) const;
  /// Word-metric distance between the elements the two words represent.
  std::size_t distance(const Word& x, const Word& y) const;

 protected:
  std::vector<std::string> names_;
};

std::unique_ptr<GroupOracle> make_free(std::size_t rank);
std::unique_ptr<GroupOracle> make_free_abelian(std::size_t rank);

/// Multiplication table with identity 0, plus named generators.
struct FiniteTable {
  std::vector<std::vector<int>> table;
  std::vector<std::pair<std::string, int>> generators;
};

/// Format: `order: N`, `generator: NAME ELEMENT` lines, then `table:`
/// followed by N rows of N entries. Element 0 must be the identity.
FiniteTable parse_finite_table(std::string_view text);
std::unique_ptr<GroupOracle> make_finite(FiniteTable t, std::string source = "inline");

/// Generators of the left factor get suffix "1", of the right factor "2".
std::unique_ptr<GroupOracle> make_product(std::unique_ptr<GroupOracle> left,
                                          std::unique_ptr<GroupOracle> right);

/// Parses `free N`, `abelian N`, `finite PATH` and `product SPEC SPEC`,
/// optionally preceded by `group:`. Relative table paths resolve against
/// `base_dir`.
std::unique_ptr<GroupOracle> make_oracle(std::string_view spec,
                                         const std::filesystem::path& base_dir = {});

}  // namespace nsa::group
