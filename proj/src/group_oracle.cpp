#include "nsa/group_oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nsa::group {

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> paired_names(std::size_t rank) {
  if (rank > 26) throw std::invalid_argument("rank above 26 is not supported");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rank; ++i) {
    std::string g(1, static_cast<char>('a' + i));
    out.push_back(g);
    out.push_back(upper(g));
  }
  return out;
}

std::vector<std::int32_t> unpack(const Element& e) {
  std::vector<std::int32_t> v(e.size() / 4);
  std::memcpy(v.data(), e.data(), v.size() * 4);
  return v;
}

Element pack(const std::vector<std::int32_t>& v) {
  Element e(v.size() * 4, '\0');
  std::memcpy(e.data(), v.data(), e.size());
  return e;
}

std::string join_names(const std::vector<std::string>& names, const std::vector<int>& gens) {
  if (gens.empty()) return "1";
  const bool single = std::all_of(gens.begin(), gens.end(), [&](int g) { return names[g].size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!single && i) out += ' ';
    out += names[gens[i]];
  }
  return out;
}

// Reduced words; one byte per generator.
class FreeGroup final : public GroupOracle {
 public:
  explicit FreeGroup(std::size_t rank) : rank_(rank) { names_ = paired_names(rank); }
  Family family() const override { return Family::Free; }
  Element identity() const override { return {}; }
  Element multiply(const Element& g, int gen) const override {
    Element out = g;
    if (!out.empty() && static_cast<int>(static_cast<unsigned char>(out.back())) == inverse(gen))
      out.pop_back();
    else
      out.push_back(static_cast<char>(gen));
    return out;
  }
  std::size_t length(const Element& g) const override { return g.size(); }
  std::string describe(const Element& g) const override {
    std::vector<int> gens;
    for (char c : g) gens.push_back(static_cast<unsigned char>(c));
    return join_names(names_, gens);
  }
  std::string spec() const override { return "free " + std::to_string(rank_); }

 private:
  std::size_t rank_;
};

// Exponent vectors.
class FreeAbelianGroup final : public GroupOracle {
 public:
  explicit FreeAbelianGroup(std::size_t rank) : rank_(rank) { names_ = paired_names(rank); }
  Family family() const override { return Family::FreeAbelian; }
  Element identity() const override { return pack(std::vector<std::int32_t>(rank_, 0)); }
  Element multiply(const Element& g, int gen) const override {
    auto v = unpack(g);
    v[gen / 2] += (gen & 1) ? -1 : 1;
    return pack(v);
  }
  std::size_t length(const Element& g) const override {
    std::size_t n = 0;
    for (auto x : unpack(g)) n += static_cast<std::size_t>(x < 0 ? -x : x);
    return n;
  }
  std::string describe(const Element& g) const override {
    const auto v = unpack(g);
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (!out.empty()) out += ' ';
      out += names_[2 * i] + "^" + std::to_string(v[i]);
    }
    return out.empty() ? "1" : out;
  }
  std::string spec() const override { return "abelian " + std::to_string(rank_); }

 private:
  std::size_t rank_;
};

class FiniteGroup final : public GroupOracle {
 public:
  FiniteGroup(FiniteTable t, std::string source) : table_(std::move(t.table)), source_(std::move(source)) {
    const int n = static_cast<int>(table_.size());
    std::vector<int> inv(n, -1);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (table_[x][y] == 0) inv[x] = y;
    for (auto& [name, element] : t.generators) {
      names_.push_back(name);
      names_.push_back(upper(name));
      element_of_.push_back(element);
      element_of_.push_back(inv[element]);
    }
    // word lengths by breadth-first search from the identity
    dist_.assign(n, SIZE_MAX);
    dist_[0] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int s : element_of_) {
        const int y = table_[x][s];
        if (dist_[y] == SIZE_MAX) {
          dist_[y] = dist_[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  Family family() const override { return Family::Finite; }
  Element identity() const override { return pack({0}); }
  Element multiply(const Element& g, int gen) const override {
    return pack({table_[unpack(g)[0]][element_of_[gen]]});
  }
  std::size_t length(const Element& g) const override {
    const auto d = dist_[unpack(g)[0]];
    if (d == SIZE_MAX) throw std::invalid_argument("element not in the generated subgroup");
    return d;
  }
  std::string describe(const Element& g) const override {
    const int x = unpack(g)[0];
    return x == 0 ? "1" : "e" + std::to_string(x);
  }
  std::string spec() const override { return "finite " + source_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> element_of_;
  std::vector<std::size_t> dist_;
  std::string source_;
};

// Element = 4-byte length of the left part, left part, right part.
class ProductGroup final : public GroupOracle {
 public:
  ProductGroup(std::unique_ptr<GroupOracle> l, std::unique_ptr<GroupOracle> r)
      : left_(std::move(l)), right_(std::move(r)) {
    for (const auto& n : left_->generators()) names_.push_back(n + "1");
    for (const auto& n : right_->generators()) names_.push_back(n + "2");
  }
  Family family() const override { return Family::Product; }
  Element identity() const override { return join(left_->identity(), right_->identity()); }
  Element multiply(const Element& g, int gen) const override {
    auto [l, r] = split(g);
    const int nl = static_cast<int>(left_->generator_count());
    if (gen < nl) return join(left_->multiply(l, gen), r);
    return join(l, right_->multiply(r, gen - nl));
  }
  std::size_t length(const Element& g) const override {
    auto [l, r] = split(g);
    return left_->length(l) + right_->length(r);
  }
  std::string describe(const Element& g) const override {
    auto [l, r] = split(g);
    return "(" + left_->describe(l) + ", " + right_->describe(r) + ")";
  }
  std::string spec() const override {
    return "product " + left_->spec() + " " + right_->spec();
  }

 private:
  static Element join(const Element& l, const Element& r) {
    Element out = pack({static_cast<std::int32_t>(l.size())});
    out += l;
    out += r;
    return out;
  }
  static std::pair<Element, Element> split(const Element& g) {
    std::int32_t n;
    std::memcpy(&n, g.data(), 4);
    return {g.substr(4, n), g.substr(4 + n)};
  }

  std::unique_ptr<GroupOracle> left_;
  std::unique_ptr<GroupOracle> right_;
};

}  // namespace

std::optional<int> GroupOracle::generator_index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

Element GroupOracle::canonical(const Word& w) const {
  Element g = identity();
  for (const auto& a : w) {
    auto i = generator_index(a);
    if (!i) throw std::invalid_argument("unknown generator '" + a + "'");
    g = multiply(g, *i);
  }
  return g;
}

Word GroupOracle::inverse_word(const Word& w) const {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    auto i = generator_index(*it);
    if (!i) throw std::invalid_argument("unknown generator '" + *it + "'");
    out.push_back(names_[inverse(*i)]);
  }
  return out;
}

std::size_t GroupOracle::distance(const Word& x, const Word& y) const {
  Word w = inverse_word(x);
  w.insert(w.end(), y.begin(), y.end());
  return length(canonical(w));
}

std::unique_ptr<GroupOracle> make_free(std::size_t rank) { return std::make_unique<FreeGroup>(rank); }

std::unique_ptr<GroupOracle> make_free_abelian(std::size_t rank) {
  return std::make_unique<FreeAbelianGroup>(rank);
}

FiniteTable parse_finite_table(std::string_view text) {
  FiniteTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int order = -1;
  bool in_table = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tok(line);
    std::string head;
    if (!(tok >> head)) continue;
    if (in_table) {
      std::vector<int> row;
      std::istringstream again(line);
      for (int x; again >> x;) row.push_back(x);
      if (!again.eof()) throw ParseError(line_no, "table rows must hold integers");
      if (static_cast<int>(row.size()) != order) throw ParseError(line_no, "table row has wrong length");
      t.table.push_back(std::move(row));
      continue;
    }
    if (head == "order:") {
      if (!(tok >> order) || order < 1) throw ParseError(line_no, "order: expects a positive integer");
    } else if (head == "generator:") {
      std::string name;
      int element;
      if (!(tok >> name >> element)) throw ParseError(line_no, "generator: expects NAME ELEMENT");
      if (name.empty() || !std::all_of(name.begin(), name.end(), [](char c) {
            return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
          }) || !std::islower(static_cast<unsigned char>(name[0])))
        throw ParseError(line_no, "generator names must be lowercase identifiers");
      t.generators.emplace_back(name, element);
    } else if (head == "table:") {
      if (order < 1) throw ParseError(line_no, "order: must precede table:");
      in_table = true;
    } else {
      throw ParseError(line_no, "unknown key '" + head + "'");
    }
  }
  if (!in_table) throw ParseError(0, "missing table:");
  if (static_cast<int>(t.table.size()) != order) throw ParseError(0, "table has wrong number of rows");
  const int n = order;
  for (auto& row : t.table)
    for (int x : row)
      if (x < 0 || x >= n) throw ParseError(0, "table entry out of range");
  for (int x = 0; x < n; ++x)
    if (t.table[0][x] != x || t.table[x][0] != x) throw ParseError(0, "element 0 is not the identity");
  for (int x = 0; x < n; ++x) {
    std::vector<bool> row_seen(n), col_seen(n);
    for (int y = 0; y < n; ++y) {
      row_seen[t.table[x][y]] = true;
      col_seen[t.table[y][x]] = true;
    }
    if (std::count(row_seen.begin(), row_seen.end(), false) ||
        std::count(col_seen.begin(), col_seen.end(), false))
      throw ParseError(0, "table is not a Latin square");
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (t.table[t.table[x][y]][z] != t.table[x][t.table[y][z]])
          throw ParseError(0, "table is not associative");
  for (auto& [name, element] : t.generators)
    if (element < 0 || element >= n) throw ParseError(0, "generator '" + name + "' out of range");
  return t;
}

std::unique_ptr<GroupOracle> make_finite(FiniteTable t, std::string source) {
  return std::make_unique<FiniteGroup>(std::move(t), std::move(source));
}

std::unique_ptr<GroupOracle> make_product(std::unique_ptr<GroupOracle> left,
                                          std::unique_ptr<GroupOracle> right) {
  return std::make_unique<ProductGroup>(std::move(left), std::move(right));
}

namespace {

std::unique_ptr<GroupOracle> parse_spec(std::vector<std::string>& tokens, std::size_t& pos,
                                        const std::filesystem::path& base_dir) {
  if (pos >= tokens.size()) throw std::invalid_argument("incomplete group spec");
  const std::string kind = tokens[pos++];
  auto count = [&]() -> std::size_t {
    if (pos >= tokens.size()) throw std::invalid_argument("'" + kind + "' expects a rank");
    const std::string& s = tokens[pos++];
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("bad rank '" + s + "'");
    return std::stoul(s);
  };
  if (kind == "free") return make_free(count());
  if (kind == "abelian") return make_free_abelian(count());
  if (kind == "finite") {
    if (pos >= tokens.size()) throw std::invalid_argument("'finite' expects a table file");
    std::filesystem::path p = tokens[pos++];
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    std::ifstream in(p);
    if (!in) throw std::invalid_argument("cannot open table file " + p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return make_finite(parse_finite_table(buf.str()), p.filename().string());
  }
  if (kind == "product") {
    auto l = parse_spec(tokens, pos, base_dir);
    auto r = parse_spec(tokens, pos, base_dir);
    return make_product(std::move(l), std::move(r));
  }
  throw std::invalid_argument("unknown group family '" + kind + "'");
}

}  // namespace

std::unique_ptr<GroupOracle> make_oracle(std::string_view spec, const std::filesystem::path& base_dir) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(spec)};
  for (std::string t; in >> t;) tokens.push_back(t);
  std::size_t pos = 0;
  if (!tokens.empty() && tokens[0] == "group:") ++pos;
  auto oracle = parse_spec(tokens, pos, base_dir);
  if (pos != tokens.size()) throw std::invalid_argument("trailing tokens in group spec");
  return oracle;
}

}  // namespace nsa::group
