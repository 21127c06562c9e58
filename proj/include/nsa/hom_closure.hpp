#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nsa/machine.hpp"

namespace nsa {

/// A non-erasing monoid homomorphism from source-alphabet words to
/// target-alphabet words, given by the images of the source letters.
struct Homomorphism {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::map<std::string, Word> images;

  Word apply(const Word& w) const;
  bool is_letter_to_letter() const;

  /// Empty when every source letter has a nonempty image over the target.
  std::vector<std::string> problems() const;
};

Homomorphism identity_homomorphism(const std::vector<std::string>& alphabet);

/// Parses `map: a -> b c d` lines. The source alphabet is the set of mapped
/// letters in order of appearance; the target alphabet is `target`.
Homomorphism parse_homomorphism(std::string_view text, const std::vector<std::string>& target);

enum class ElementaryKind { LetterMap, Expansion };

/// Either a letter-to-letter map or `letter -> first second` fixing every
/// other letter.
struct ElementaryHom {
  ElementaryKind kind = ElementaryKind::LetterMap;
  Homomorphism map;
  std::string letter;
  std::string first;
  std::string second;
};

/// Elementary factors h_1, ..., h_n with f(w) = h_n(...h_1(w)...).
/// Intermediate letters are fresh names in the reserved "__exp_" namespace.
std::vector<ElementaryHom> factor(const Homomorphism& f);

Word apply_chain(const std::vector<ElementaryHom>& chain, const Word& w);

/// Machine over f's source alphabet accepting the preimage of the language,
/// for a letter-to-letter f whose target is the machine's input alphabet.
Machine preimage_letter_map(const Machine& a, const Homomorphism& f);

/// The two-copy machine for the preimage under `letter -> first second`,
/// with the correspondence between copies and the original kept explicit.
struct ExpansionMachine {
  Machine machine;
  std::vector<int> copy1;  // original state -> state in the first copy
  std::vector<int> copy2;  // original state -> state in the second copy
  int start = -1;
  int accept = -1;
};

ExpansionMachine build_expansion(const Machine& a, const std::string& letter,
                                 const std::string& first, const std::string& second,
                                 const std::string& guard_symbol);

Machine preimage_expansion(const Machine& a, const std::string& letter, const std::string& first,
                           const std::string& second, const std::string& guard_symbol);

/// Folds factor(f) through the two elementary constructions.
Machine preimage(const Machine& a, const Homomorphism& f);

}  // namespace nsa
