#include <gtest/gtest.h>

#include "nsa/acceptance.hpp"
#include "nsa/machine.hpp"
#include "support.hpp"

using namespace nsa;
using testing_support::load;

TEST(Machine, Fig2Shape) {
  auto m = load("fig2.nsa");
  EXPECT_EQ(m.states.size(), 4u);
  EXPECT_EQ(m.states[m.initial], "1");
  ASSERT_EQ(m.finals.size(), 1u);
  EXPECT_EQ(m.finals[0], m.initial);
  EXPECT_EQ(m.edges.size(), 8u);
  EXPECT_EQ(m.input_alphabet, (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_TRUE(check_machine(m).empty());
}

TEST(Machine, RoundTrip) {
  for (auto name : {"fig2.nsa", "anbn.nsa", "dyck.nsa", "zword.nsa"}) {
    auto m = load(name);
    EXPECT_EQ(parse_machine(print_machine(m)), m) << name;
  }
}

TEST(Machine, EmptyEdgeSection) {
  auto yes = parse_machine("states: s\nstart: s\nfinal: s\ninput: a\nmemory: x\nedges:\n");
  EXPECT_EQ(accepts(yes, Word{}).verdict, Verdict::Accepted);
  EXPECT_EQ(accepts(yes, Word{"a"}).verdict, Verdict::Rejected);
  auto no = parse_machine("states: s t\nstart: s\nfinal: t\ninput: a\nmemory: x\nedges:\n");
  EXPECT_EQ(accepts(no, Word{}).verdict, Verdict::Rejected);
}

namespace {

std::string parse_error(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse_machine(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.what();
  }
  return "";
}

const std::string kHead = "states: 1 2\nstart: 1\nfinal: 1\ninput: a\nmemory: x\n";

}  // namespace

TEST(Machine, Errors) {
  std::size_t line = 0;
  auto msg = parse_error(kHead + "edge: 1 2 push z a\n", &line);
  EXPECT_NE(msg.find("'z'"), std::string::npos) << msg;
  EXPECT_EQ(line, 6u);
  EXPECT_NE(parse_error(kHead + "edge: 1 3 push x a\n").find("unknown state '3'"), std::string::npos);
  EXPECT_NE(parse_error(kHead + "edge: 1 2 push x b\n").find("undeclared input letter 'b'"), std::string::npos);
  EXPECT_NE(parse_error(kHead + "edge: 1 2 jump x a\n").find("unknown operation"), std::string::npos);
  EXPECT_NE(parse_error(kHead + "edge: 1 2 pop eps a\n").find("only 'up'"), std::string::npos);
  EXPECT_NE(parse_error("states: 1 1\nstart: 1\n").find("duplicate state"), std::string::npos);
  EXPECT_NE(parse_error("states: 1\nstart: 1\ninput: a a\n").find("duplicate letter"), std::string::npos);
  EXPECT_NE(parse_error("states: 1\n").find("no start state"), std::string::npos);
  EXPECT_NE(parse_error("states: 1\nstart: 1\ninput: __a\n").find("reserved"), std::string::npos);
  EXPECT_NE(parse_error("states: 1\nstart: 1\nmemory: eps\n").find("'eps'"), std::string::npos);
  EXPECT_NE(parse_error("bogus line\n").find("expected 'key:'"), std::string::npos);
  EXPECT_NO_THROW(parse_machine("states: __s\nstart: __s\n", {true}));
}

TEST(Machine, CommentsAndEdgesSection) {
  auto m = parse_machine(kHead + "# a comment\nedges:\n  1 2 push x a   # trailing\n  2 1 pop x eps\n");
  ASSERT_EQ(m.edges.size(), 2u);
  EXPECT_EQ(m.edges[1].input, kEpsilonLetter);
  EXPECT_EQ(m.edges[1].op, StackOp::pop(0));
}

TEST(Machine, Words) {
  EXPECT_EQ(word_from_text("abcd"), (Word{"a", "b", "c", "d"}));
  EXPECT_EQ(word_from_text("a1 a2  b"), (Word{"a1", "a2", "b"}));
  EXPECT_EQ(word_from_text(""), Word{});
  EXPECT_EQ(word_to_text(Word{"a", "b"}), "ab");
  EXPECT_EQ(word_to_text(Word{"a1", "b"}), "a1 b");
  auto m = load("fig2.nsa");
  auto enc = encode_word(m, Word{"b", "a"});
  ASSERT_TRUE(enc);
  EXPECT_EQ(*enc, (LetterWord{1, 0}));
  EXPECT_EQ(decode_word(m, *enc), (Word{"b", "a"}));
  EXPECT_FALSE(encode_word(m, Word{"e"}));
}

TEST(Machine, CheckMachineFindsBrokenParts) {
  auto m = load("fig2.nsa");
  m.edges[0].target = 9;
  m.edges[1].input = 7;
  auto problems = check_machine(m);
  EXPECT_EQ(problems.size(), 2u);
}
