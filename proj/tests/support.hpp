#pragma once

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nsa/machine.hpp"
#include "nsa/memory_tree.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline nsa::Machine load(const std::string& name) { return nsa::parse_machine(slurp(fixture(name))); }

inline std::string joined(const nsa::Word& w) {
  std::string s;
  for (const auto& a : w) s += a;
  return s;
}

// Words (a^k b^k c^k d^k)^m of length <= n, built block by block.
inline std::set<std::string> block_language(std::size_t n) {
  std::set<std::string> out{""};
  std::vector<std::string> todo{""};
  while (!todo.empty()) {
    auto w = todo.back();
    todo.pop_back();
    for (std::size_t k = 1; w.size() + 4 * k <= n; ++k) {
      auto v = w + std::string(k, 'a') + std::string(k, 'b') + std::string(k, 'c') + std::string(k, 'd');
      if (out.insert(v).second) todo.push_back(v);
    }
  }
  return out;
}

// Membership in (a^k b^k c^k d^k)* by scanning blocks.
inline bool in_block_language(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t k = 0;
    while (i + k < s.size() && s[i + k] == 'a') ++k;
    if (k == 0 || s.compare(i + k, k, std::string(k, 'b')) != 0 ||
        s.compare(i + 2 * k, k, std::string(k, 'c')) != 0 || s.compare(i + 3 * k, k, std::string(k, 'd')) != 0)
      return false;
    i += 4 * k;
  }
  return true;
}

// Every word over `alphabet` of length <= n, shortlex.
inline std::vector<nsa::Word> all_words(const std::vector<std::string>& alphabet, std::size_t n) {
  std::vector<nsa::Word> out{{}};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (const auto& a : alphabet) {
        auto w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    from = to;
  }
  return out;
}

// A random walk of defined operations from the empty tree; every tree on
// the way is valid by construction if apply is right.
inline std::vector<nsa::MemoryTree> random_trees(std::mt19937& rng, std::size_t count, int alphabet,
                                                 std::size_t walk = 24) {
  std::vector<nsa::MemoryTree> out;
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  while (out.size() < count) {
    nsa::MemoryTree t;
    for (std::size_t s = 0; s < walk && out.size() < count; ++s) {
      const int k = kind(rng);
      std::optional<nsa::MemoryTree> next;
      if (k <= 1) {
        next = nsa::apply(nsa::StackOp::push(sym(rng)), t);
      } else {
        // pick a defined move of the chosen kind, if any
        const nsa::Symbol x = t.current_symbol();
        if (k == 2) next = nsa::apply(nsa::StackOp::pop(x), t);
        if (k == 3) next = nsa::apply(nsa::StackOp::down(x), t);
        if (k == 4) next = nsa::apply(nsa::StackOp::up(x), t);
      }
      if (next) t = std::move(*next);
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace testing_support
