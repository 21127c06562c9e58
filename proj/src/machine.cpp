#include "nsa/machine.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nsa {

namespace {

template <class T>
std::optional<int> find_index(const std::vector<T>& v, std::string_view name) {
  auto it = std::find(v.begin(), v.end(), name);
  if (it == v.end()) return std::nullopt;
  return static_cast<int>(it - v.begin());
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

bool Machine::is_final(int state) const {
  return std::binary_search(finals.begin(), finals.end(), state);
}

std::optional<int> Machine::state_index(std::string_view name) const {
  return find_index(states, name);
}

std::optional<Letter> Machine::letter_index(std::string_view name) const {
  return find_index(input_alphabet, name);
}

std::optional<Symbol> Machine::symbol_index(std::string_view name) const {
  return find_index(memory_alphabet, name);
}

std::vector<std::vector<int>> Machine::out_edges() const {
  std::vector<std::vector<int>> out(states.size());
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].source].push_back(static_cast<int>(e));
  return out;
}

Machine parse_machine(std::string_view text, ParseOptions options) {
  Machine m;
  bool have_start = false;
  std::string start_name;
  std::size_t start_line = 0;
  std::vector<std::pair<std::string, std::size_t>> final_names;
  struct RawEdge {
    std::vector<std::string> fields;
    std::size_t line;
  };
  std::vector<RawEdge> raw_edges;

  auto check_name = [&](const std::string& name, std::size_t line, const char* what) {
    if (!options.allow_reserved && name.starts_with(kReservedPrefix))
      throw ParseError(line, std::string("reserved ") + what + " name '" + name + "'");
    if (name == "eps") throw ParseError(line, std::string("'eps' cannot be used as a ") + what);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool in_edges = false;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens.front();
    if (in_edges && head.back() != ':') {
      raw_edges.push_back({std::move(tokens), line_no});
      continue;
    }
    if (head.empty() || head.back() != ':')
      throw ParseError(line_no, "expected 'key:' at start of line, got '" + head + "'");
    const std::string key = head.substr(0, head.size() - 1);
    std::vector<std::string> args(tokens.begin() + 1, tokens.end());
    in_edges = false;

    if (key == "states") {
      for (auto& s : args) {
        if (!options.allow_reserved && s.starts_with(kReservedPrefix))
          throw ParseError(line_no, "reserved state name '" + s + "'");
        if (m.state_index(s)) throw ParseError(line_no, "duplicate state '" + s + "'");
        m.states.push_back(s);
      }
    } else if (key == "start") {
      if (args.size() != 1) throw ParseError(line_no, "start: expects exactly one state");
      if (have_start) throw ParseError(line_no, "start declared twice");
      have_start = true;
      start_name = args[0];
      start_line = line_no;
    } else if (key == "final") {
      for (auto& s : args) final_names.emplace_back(s, line_no);
    } else if (key == "input") {
      for (auto& a : args) {
        check_name(a, line_no, "letter");
        if (m.letter_index(a)) throw ParseError(line_no, "duplicate letter '" + a + "'");
        m.input_alphabet.push_back(a);
      }
    } else if (key == "memory") {
      for (auto& x : args) {
        check_name(x, line_no, "memory symbol");
        if (m.symbol_index(x)) throw ParseError(line_no, "duplicate memory symbol '" + x + "'");
        m.memory_alphabet.push_back(x);
      }
    } else if (key == "edge") {
      raw_edges.push_back({std::move(args), line_no});
    } else if (key == "edges") {
      if (!args.empty()) throw ParseError(line_no, "edges: is a section marker and takes no values");
      in_edges = true;
      continue;
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }

  if (m.states.empty()) throw ParseError(0, "no states declared");
  if (!have_start) throw ParseError(0, "no start state declared");
  auto start = m.state_index(start_name);
  if (!start) throw ParseError(start_line, "unknown start state '" + start_name + "'");
  m.initial = *start;
  for (auto& [name, line] : final_names) {
    auto s = m.state_index(name);
    if (!s) throw ParseError(line, "unknown final state '" + name + "'");
    m.finals.push_back(*s);
  }
  std::sort(m.finals.begin(), m.finals.end());
  m.finals.erase(std::unique(m.finals.begin(), m.finals.end()), m.finals.end());

  for (auto& [f, line] : raw_edges) {
    // edge: SRC DST OP [SYMBOL] INPUT
    if (f.size() < 4) throw ParseError(line, "edge: expects 'src dst op [symbol] input'");
    Edge e;
    auto src = m.state_index(f[0]);
    if (!src) throw ParseError(line, "unknown state '" + f[0] + "'");
    auto dst = m.state_index(f[1]);
    if (!dst) throw ParseError(line, "unknown state '" + f[1] + "'");
    e.source = *src;
    e.target = *dst;
    const std::string& op = f[2];
    std::size_t next = 3;
    if (op == "stay") {
      e.op = StackOp::stay();
    } else {
      if (f.size() != 5) throw ParseError(line, "edge: '" + op + "' expects a symbol and an input");
      const std::string& sym = f[3];
      next = 4;
      OpKind kind;
      if (op == "push") kind = OpKind::Push;
      else if (op == "pop") kind = OpKind::Pop;
      else if (op == "down") kind = OpKind::Down;
      else if (op == "up") kind = OpKind::Up;
      else throw ParseError(line, "unknown operation '" + op + "'");
      Symbol x = kEpsilonSymbol;
      if (sym == "eps") {
        if (kind != OpKind::Up) throw ParseError(line, "only 'up' accepts the empty memory symbol");
      } else {
        auto s = m.symbol_index(sym);
        if (!s) throw ParseError(line, "undeclared memory symbol '" + sym + "'");
        x = *s;
      }
      e.op = {kind, x};
    }
    if (f.size() != next + 1) throw ParseError(line, "edge: wrong number of fields");
    const std::string& in = f[next];
    if (in == "eps") {
      e.input = kEpsilonLetter;
    } else {
      auto a = m.letter_index(in);
      if (!a) throw ParseError(line, "undeclared input letter '" + in + "'");
      e.input = *a;
    }
    m.edges.push_back(e);
  }
  return m;
}

std::string op_to_string(StackOp op, const Machine& m) {
  auto sym = [&](Symbol x) {
    return x == kEpsilonSymbol ? std::string("eps") : m.memory_alphabet.at(x);
  };
  switch (op.kind) {
    case OpKind::Down: return "down " + sym(op.symbol);
    case OpKind::Up: return "up " + sym(op.symbol);
    case OpKind::Push: return "push " + sym(op.symbol);
    case OpKind::Pop: return "pop " + sym(op.symbol);
    case OpKind::Stay: return "stay";
  }
  return "?";
}

std::string letter_name(Letter a, const Machine& m) {
  return a == kEpsilonLetter ? std::string("eps") : m.input_alphabet.at(a);
}

std::string print_machine(const Machine& m) {
  std::ostringstream os;
  auto list = [&os](const char* key, const std::vector<std::string>& items) {
    os << key << ':';
    for (auto& s : items) os << ' ' << s;
    os << '\n';
  };
  list("states", m.states);
  os << "start: " << m.states[m.initial] << '\n';
  os << "final:";
  for (int f : m.finals) os << ' ' << m.states[f];
  os << '\n';
  list("input", m.input_alphabet);
  list("memory", m.memory_alphabet);
  for (const auto& e : m.edges)
    os << "edge: " << m.states[e.source] << ' ' << m.states[e.target] << ' '
       << op_to_string(e.op, m) << ' ' << letter_name(e.input, m) << '\n';
  return os.str();
}

std::vector<std::string> check_machine(const Machine& m) {
  std::vector<std::string> out;
  const int n = static_cast<int>(m.states.size());
  if (n == 0) out.push_back("no states");
  if (m.initial < 0 || m.initial >= n) out.push_back("initial state out of range");
  for (int f : m.finals)
    if (f < 0 || f >= n) out.push_back("final state out of range");
  if (!std::is_sorted(m.finals.begin(), m.finals.end())) out.push_back("finals not sorted");
  const int letters = static_cast<int>(m.input_alphabet.size());
  const int symbols = static_cast<int>(m.memory_alphabet.size());
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    const auto& e = m.edges[i];
    const std::string where = "edge " + std::to_string(i) + ": ";
    if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
      out.push_back(where + "endpoint out of range");
    if (e.input != kEpsilonLetter && (e.input < 0 || e.input >= letters))
      out.push_back(where + "input letter out of range");
    if (e.op.kind == OpKind::Stay) continue;
    if (e.op.symbol == kEpsilonSymbol) {
      if (e.op.kind != OpKind::Up) out.push_back(where + "empty symbol on a non-up operation");
    } else if (e.op.symbol < 0 || e.op.symbol >= symbols) {
      out.push_back(where + "memory symbol out of range");
    }
  }
  return out;
}

std::optional<LetterWord> encode_word(const Machine& m, const Word& w) {
  LetterWord out;
  out.reserve(w.size());
  for (const auto& a : w) {
    auto i = m.letter_index(a);
    if (!i) return std::nullopt;
    out.push_back(*i);
  }
  return out;
}

Word decode_word(const Machine& m, const LetterWord& w) {
  Word out;
  out.reserve(w.size());
  for (Letter a : w) out.push_back(m.input_alphabet.at(a));
  return out;
}

Word word_from_text(std::string_view text) {
  if (text.find_first_of(" \t\n") != std::string_view::npos) return split_ws(text);
  Word out;
  for (char c : text) out.emplace_back(1, c);
  return out;
}

std::string word_to_text(const Word& w) {
  const bool single = std::all_of(w.begin(), w.end(), [](auto& a) { return a.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i) out += ' ';
    out += w[i];
  }
  return out;
}

}  // namespace nsa
