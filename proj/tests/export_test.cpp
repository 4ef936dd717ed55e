#include <gtest/gtest.h>

#include <regex>

#include "heraklit/calculus.hpp"
#include "heraklit/dsl.hpp"
#include "heraklit/export.hpp"
#include "heraklit/iso.hpp"
#include "heraklit/random.hpp"
#include "support.hpp"

using namespace heraklit;
using heraklit::testing::Builder;
using heraklit::testing::fixture;

namespace {

Module binding(const char* file, const char* name) {
  const auto env = dsl::parse_file(fixture(file));
  return dsl::Evaluator(env).eval_name(name);
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Dot, EmptyModule) {
  const auto dot = to_dot(empty_module());
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_EQ(dot.back(), '\n');
  EXPECT_EQ(count(dot, "{"), count(dot, "}"));
}

TEST(Dot, TwoSidedNodesAreDrawnTwice) {
  const auto dot = to_dot(binding("philosophers.hkl", "think"));
  EXPECT_EQ(count(dot, "label=\"take\""), 2u);
  EXPECT_EQ(count(dot, "label=\"return\""), 2u);
  EXPECT_EQ(count(dot, "black:invis:black"), 2u);
}

TEST(Dot, ForkHasOneAvailablePlace) {
  const auto dot = to_dot(binding("philosophers.hkl", "fork"));
  EXPECT_EQ(count(dot, "label=\"available\""), 1u);
}

TEST(Dot, QuotesAwkwardNames) {
  const Module m = Builder().place("a\"b", "l\"x").build("n\"m");
  const auto dot = to_dot(m);
  EXPECT_NE(dot.find("l\\\"x"), std::string::npos);
  EXPECT_EQ(dot.find("l\"x"), std::string::npos);
}

TEST(Pnml, PhilosophersCycle) {
  const auto xml = to_pnml(binding("philosophers.hkl", "phils_in_a_cycle"));
  EXPECT_EQ(count(xml, "<transition "), 10u);
  EXPECT_EQ(count(xml, "<place "), 15u);
  EXPECT_EQ(count(xml, "<arc "), 40u);
  EXPECT_EQ(count(xml, "<initialMarking>"), 10u);
  EXPECT_NE(xml.find("http://www.pnml.org/version-2009/grammar/ptnet"), std::string::npos);
}

TEST(Pnml, AbstractNodeIsNotANet) {
  try {
    to_pnml(abstract_of(binding("production.hkl", "pack")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_a_net);
  }
}

TEST(Pnml, EmptyModuleHasEmptyPage) {
  const auto xml = to_pnml(empty_module());
  EXPECT_NE(xml.find("<page id=\"page\""), std::string::npos);
  EXPECT_EQ(count(xml, "<place "), 0u);
  EXPECT_EQ(count(xml, "<transition "), 0u);
}

TEST(Pnml, IdsAreXmlNames) {
  const std::regex ncname("[A-Za-z_][A-Za-z0-9._-]*");
  std::string long_name(200, 'x');
  const NodeId plain(AtomicNodeId{3, "take"});
  const NodeId odd(AtomicNodeId{1, "a b/c:d\xC3\xA9"});
  const NodeId big(AtomicNodeId{1, long_name});
  std::set<std::string> seen;
  for (const auto* id : {&plain, &odd, &big}) {
    const auto s = pnml_id(*id);
    EXPECT_TRUE(std::regex_match(s, ncname)) << s;
    EXPECT_LE(s.size(), 64u);
    EXPECT_TRUE(seen.insert(s).second);
  }
  EXPECT_EQ(pnml_id(plain), pnml_id(NodeId(AtomicNodeId{3, "take"})));
  EXPECT_NE(pnml_id(NodeId(AtomicNodeId{1, "a_b"})), pnml_id(NodeId(AtomicNodeId{1, "a b"})));
}

TEST(Dump, RoundTripOfComposition) {
  const Module m = binding("production.hkl", "line");
  const std::string text = dump(m);
  const Module back = load(text);
  EXPECT_TRUE(structural_equal(m, back));
  EXPECT_EQ(back.name(), m.name());
  EXPECT_EQ(dump(back), text);
}

TEST(Dump, DeterministicAcrossEvaluations) {
  EXPECT_EQ(dump(binding("philosophers.hkl", "phils_in_a_cycle")),
            dump(binding("philosophers.hkl", "phils_in_a_cycle")));
}

TEST(Dump, RandomRoundTrips) {
  gen::Generator g(5);
  for (int i = 0; i < 200; ++i) {
    const Module m = g.module(i % 2 ? std::optional<std::string>("M") : std::nullopt);
    const std::string text = dump(m);
    const Module back = load(text);
    ASSERT_TRUE(structural_equal(m, back)) << text;
    ASSERT_EQ(dump(back), text);
  }
}

TEST(Dump, MalformedInput) {
  const std::string text = dump(binding("production.hkl", "pack"));
  auto code = [](const std::string& s) {
    try {
      load(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::syntax_error;
  };
  EXPECT_EQ(code(text.substr(0, text.size() / 2)), ErrorCode::parse_error);
  EXPECT_EQ(code("{}"), ErrorCode::parse_error);
  EXPECT_EQ(code("[1, 2]"), ErrorCode::parse_error);
  std::string bad_index = text;
  bad_index.replace(bad_index.find("\"index\": 1"), 10, "\"index\": 2");
  EXPECT_EQ(code(bad_index), ErrorCode::parse_error);
  std::string bad_node = text;
  bad_node.replace(bad_node.find("\"node\": 1"), 9, "\"node\": 9");
  EXPECT_EQ(code(bad_node), ErrorCode::parse_error);
}
