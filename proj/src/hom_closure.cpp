#include "nsa/hom_closure.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nsa {

Word Homomorphism::apply(const Word& w) const {
  Word out;
  for (const auto& a : w) {
    auto it = images.find(a);
    if (it == images.end()) throw std::invalid_argument("letter '" + a + "' has no image");
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

bool Homomorphism::is_letter_to_letter() const {
  return std::all_of(images.begin(), images.end(), [](auto& kv) { return kv.second.size() == 1; });
}

std::vector<std::string> Homomorphism::problems() const {
  std::vector<std::string> out;
  const std::set<std::string> tgt(target.begin(), target.end());
  for (const auto& d : source) {
    auto it = images.find(d);
    if (it == images.end()) {
      out.push_back("letter '" + d + "' has no image");
      continue;
    }
    if (it->second.empty()) out.push_back("letter '" + d + "' maps to the empty word");
    for (const auto& a : it->second)
      if (!tgt.count(a)) out.push_back("image of '" + d + "' uses unknown letter '" + a + "'");
  }
  if (images.size() != source.size()) out.push_back("images given for letters outside the source");
  return out;
}

Homomorphism identity_homomorphism(const std::vector<std::string>& alphabet) {
  Homomorphism f{alphabet, alphabet, {}};
  for (const auto& a : alphabet) f.images[a] = {a};
  return f;
}

Homomorphism parse_homomorphism(std::string_view text, const std::vector<std::string>& target) {
  Homomorphism f;
  f.target = target;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string key;
    if (!(tokens >> key)) continue;
    if (key != "map:") throw ParseError(line_no, "expected 'map:'");
    std::string letter, arrow;
    if (!(tokens >> letter >> arrow) || arrow != "->")
      throw ParseError(line_no, "expected 'map: LETTER -> WORD'");
    if (letter.starts_with(kReservedPrefix) || letter == "eps")
      throw ParseError(line_no, "reserved letter name '" + letter + "'");
    if (f.images.count(letter)) throw ParseError(line_no, "letter '" + letter + "' mapped twice");
    Word image;
    for (std::string a; tokens >> a;) image.push_back(a);
    if (image.empty()) throw ParseError(line_no, "letter '" + letter + "' maps to the empty word");
    for (const auto& a : image)
      if (std::find(target.begin(), target.end(), a) == target.end())
        throw ParseError(line_no, "letter '" + a + "' is not in the machine's input alphabet");
    f.source.push_back(letter);
    f.images[letter] = std::move(image);
  }
  if (f.source.empty()) throw ParseError(0, "homomorphism has no map: lines");
  return f;
}

std::vector<ElementaryHom> factor(const Homomorphism& f) {
  if (auto p = f.problems(); !p.empty()) throw std::invalid_argument(p.front());
  int fresh = 0;
  auto next_name = [&fresh] { return std::string(kReservedPrefix) + "exp_" + std::to_string(fresh++); };

  std::vector<ElementaryHom> chain;
  std::vector<std::string> current = f.source;
  std::map<std::string, std::string> final_image;  // letter of the last stage -> target letter

  auto expand = [&](const std::string& letter, const std::string& first, const std::string& second) {
    ElementaryHom h;
    h.kind = ElementaryKind::Expansion;
    h.letter = letter;
    h.first = first;
    h.second = second;
    h.map.source = current;
    std::vector<std::string> next;
    for (const auto& c : current) {
      if (c == letter) continue;
      next.push_back(c);
      h.map.images[c] = {c};
    }
    next.push_back(first);
    next.push_back(second);
    h.map.images[letter] = {first, second};
    h.map.target = next;
    current = std::move(next);
    chain.push_back(std::move(h));
  };

  for (const auto& d : f.source) {
    const Word& img = f.images.at(d);
    if (img.size() == 1) {
      final_image[d] = img[0];
      continue;
    }
    // d -> x1 r1, r1 -> x2 r2, ..., r_{n-2} -> x_{n-1} x_n
    std::string rest = d;
    for (std::size_t i = 0; i + 1 < img.size(); ++i) {
      const std::string x = next_name();
      const std::string r = next_name();
      expand(rest, x, r);
      final_image[x] = img[i];
      if (i + 2 == img.size()) final_image[r] = img[i + 1];
      rest = r;
    }
  }

  ElementaryHom letters;
  letters.kind = ElementaryKind::LetterMap;
  letters.map.source = current;
  letters.map.target = f.target;
  for (const auto& c : current) letters.map.images[c] = {final_image.at(c)};
  chain.push_back(std::move(letters));
  return chain;
}

Word apply_chain(const std::vector<ElementaryHom>& chain, const Word& w) {
  Word out = w;
  for (const auto& h : chain) out = h.map.apply(out);
  return out;
}

Machine preimage_letter_map(const Machine& a, const Homomorphism& f) {
  if (!f.is_letter_to_letter()) throw std::invalid_argument("homomorphism is not letter-to-letter");
  Machine out;
  out.states = a.states;
  out.initial = a.initial;
  out.finals = a.finals;
  out.memory_alphabet = a.memory_alphabet;
  out.input_alphabet = f.source;
  // preimage letters of each target letter, in source order
  std::vector<std::vector<Letter>> preimages(a.input_alphabet.size());
  for (std::size_t p = 0; p < f.source.size(); ++p) {
    const auto& image = f.images.at(f.source[p]).front();
    if (auto t = a.letter_index(image)) preimages[*t].push_back(static_cast<Letter>(p));
  }
  for (const auto& e : a.edges) {
    if (e.input == kEpsilonLetter) {
      out.edges.push_back(e);
      continue;
    }
    for (Letter p : preimages[e.input]) {
      Edge copy = e;
      copy.input = p;
      out.edges.push_back(copy);
    }
  }
  return out;
}

ExpansionMachine build_expansion(const Machine& a, const std::string& letter,
                                 const std::string& first, const std::string& second,
                                 const std::string& guard_symbol) {
  const auto a1 = a.letter_index(first);
  const auto a2 = a.letter_index(second);
  if (!a1 || !a2) throw std::invalid_argument("expansion letters must belong to the input alphabet");
  if (a.symbol_index(guard_symbol)) throw std::invalid_argument("guard symbol is not fresh");
  if (letter == "eps") throw std::invalid_argument("'eps' is not a letter");

  ExpansionMachine x;
  Machine& out = x.machine;
  // Delta = (Sigma minus {first, second}) plus {letter}
  std::vector<Letter> to_delta(a.input_alphabet.size(), kEpsilonLetter);
  for (std::size_t i = 0; i < a.input_alphabet.size(); ++i) {
    if (static_cast<Letter>(i) == *a1 || static_cast<Letter>(i) == *a2) continue;
    if (a.input_alphabet[i] == letter) throw std::invalid_argument("expanded letter clashes with the alphabet");
    to_delta[i] = static_cast<Letter>(out.input_alphabet.size());
    out.input_alphabet.push_back(a.input_alphabet[i]);
  }
  const Letter new_letter = static_cast<Letter>(out.input_alphabet.size());
  out.input_alphabet.push_back(letter);

  out.memory_alphabet = a.memory_alphabet;
  const Symbol z = static_cast<Symbol>(out.memory_alphabet.size());
  out.memory_alphabet.push_back(guard_symbol);

  const std::string p1 = std::string(kReservedPrefix) + "c1.";
  const std::string p2 = std::string(kReservedPrefix) + "c2.";
  for (const auto& s : a.states) {
    x.copy1.push_back(static_cast<int>(out.states.size()));
    out.states.push_back(p1 + s);
  }
  for (const auto& s : a.states) {
    x.copy2.push_back(static_cast<int>(out.states.size()));
    out.states.push_back(p2 + s);
  }
  x.start = static_cast<int>(out.states.size());
  out.states.push_back(std::string(kReservedPrefix) + "start");
  x.accept = static_cast<int>(out.states.size());
  out.states.push_back(std::string(kReservedPrefix) + "accept");
  out.initial = x.start;
  out.finals = {x.accept};

  // The guard vertex stands in for the root, so the root test of up(eps)
  // becomes a test for the guard symbol.
  auto lift_op = [z](StackOp op) {
    if (op.kind == OpKind::Up && op.symbol == kEpsilonSymbol) return StackOp::up(z);
    return op;
  };

  out.edges.push_back({x.start, x.copy1[a.initial], StackOp::push(z), kEpsilonLetter});
  for (const auto& e : a.edges) {
    const StackOp op = lift_op(e.op);
    if (e.input == *a1) {
      out.edges.push_back({x.copy1[e.source], x.copy2[e.target], op, new_letter});
    } else if (e.input == *a2) {
      continue;  // second letter is only read in the second copy
    } else {
      const Letter in = e.input == kEpsilonLetter ? kEpsilonLetter : to_delta[e.input];
      out.edges.push_back({x.copy1[e.source], x.copy1[e.target], op, in});
    }
  }
  for (const auto& e : a.edges) {
    const StackOp op = lift_op(e.op);
    if (e.input == kEpsilonLetter)
      out.edges.push_back({x.copy2[e.source], x.copy2[e.target], op, kEpsilonLetter});
    else if (e.input == *a2)
      out.edges.push_back({x.copy2[e.source], x.copy1[e.target], op, kEpsilonLetter});
  }
  for (int f : a.finals)
    out.edges.push_back({x.copy1[f], x.accept, StackOp::pop(z), kEpsilonLetter});
  return x;
}

Machine preimage_expansion(const Machine& a, const std::string& letter, const std::string& first,
                           const std::string& second, const std::string& guard_symbol) {
  return build_expansion(a, letter, first, second, guard_symbol).machine;
}

namespace {

std::string fresh_guard(const Machine& m) {
  for (int k = 0;; ++k) {
    std::string name = std::string(kReservedPrefix) + "z_" + std::to_string(k);
    if (!m.symbol_index(name)) return name;
  }
}

}  // namespace

Machine preimage(const Machine& a, const Homomorphism& f) {
  if (f.target != a.input_alphabet)
    throw std::invalid_argument("homomorphism target must be the machine's input alphabet");
  const auto chain = factor(f);
  Machine m = a;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (it->kind == ElementaryKind::LetterMap)
      m = preimage_letter_map(m, it->map);
    else
      m = preimage_expansion(m, it->letter, it->first, it->second, fresh_guard(m));
  }
  return m;
}

}  // namespace nsa
