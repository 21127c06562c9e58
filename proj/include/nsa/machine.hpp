#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsa/memory_tree.hpp"

namespace nsa {

// Input letters are indices into a machine's input alphabet.
using Letter = int;
inline constexpr Letter kEpsilonLetter = -1;

/// A word as a sequence of letter names; letters may be multi-character.
using Word = std::vector<std::string>;
using LetterWord = std::vector<Letter>;

struct Edge {
  int source = 0;
  int target = 0;
  StackOp op;
  Letter input = kEpsilonLetter;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A nested stack automaton as a labelled directed graph.
struct Machine {
  std::vector<std::string> states;
  int initial = 0;
  std::vector<int> finals;  // sorted, unique
  std::vector<std::string> input_alphabet;
  std::vector<std::string> memory_alphabet;
  std::vector<Edge> edges;

  bool is_final(int state) const;
  std::optional<int> state_index(std::string_view name) const;
  std::optional<Letter> letter_index(std::string_view name) const;
  std::optional<Symbol> symbol_index(std::string_view name) const;

  /// Outedges of each state, in edge order.
  std::vector<std::vector<int>> out_edges() const;

  friend bool operator==(const Machine&, const Machine&) = default;
};

/// Raised by parse_machine with a 1-based line number (0 when the problem
/// is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseOptions {
  /// Names starting with "__" are reserved for generated letters, symbols
  /// and states; user files may not use them unless this is set.
  bool allow_reserved = false;
};

inline constexpr std::string_view kReservedPrefix = "__";

Machine parse_machine(std::string_view text, ParseOptions options = {});
std::string print_machine(const Machine& m);

/// Structural problems a hand-built Machine may have; empty when valid.
std::vector<std::string> check_machine(const Machine& m);

std::string op_to_string(StackOp op, const Machine& m);
std::string letter_name(Letter a, const Machine& m);

/// nullopt when some letter is outside the input alphabet.
std::optional<LetterWord> encode_word(const Machine& m, const Word& w);
Word decode_word(const Machine& m, const LetterWord& w);

/// Splits "abcd" into single characters, or "a1 a2 b" on whitespace.
Word word_from_text(std::string_view text);
std::string word_to_text(const Word& w);

struct ResourceCaps {
  std::size_t max_steps = 1'000'000;
  std::size_t max_tree_edges = 10'000;
  std::size_t max_frontier = 100'000;
};

}  // namespace nsa
