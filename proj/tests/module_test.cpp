#include <gtest/gtest.h>

#include "heraklit/module.hpp"
#include "support.hpp"

using namespace heraklit;
using heraklit::testing::Builder;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::parse_error;
}

}  // namespace

TEST(NodeIdTest, MergeFlattensAndSorts) {
  const NodeId a(AtomicNodeId{2, "x"});
  const NodeId b(AtomicNodeId{1, "y"});
  const NodeId c(AtomicNodeId{3, "z"});
  const NodeId ab = NodeId::merge(a, b);
  const NodeId abc = NodeId::merge(ab, c);
  EXPECT_EQ(abc.atoms().size(), 3u);
  EXPECT_EQ(NodeId::merge(a, NodeId::merge(b, c)), abc);
  EXPECT_EQ(abc.str(), "y@1+x@2+z@3");  // instance first
  EXPECT_TRUE(ab.shares_atom_with(a));
  EXPECT_FALSE(ab.shares_atom_with(c));
}

TEST(NodeIdTest, TextFormIsInjective) {
  const NodeId tricky(AtomicNodeId{1, "a+b@2"});
  const NodeId plain = NodeId::merge(NodeId(AtomicNodeId{1, "a"}), NodeId(AtomicNodeId{2, "b"}));
  EXPECT_NE(tricky.str(), plain.str());
  EXPECT_EQ(tricky.str(), "a\\+b\\@2@1");
}

TEST(NodeIdTest, NeedsAtoms) {
  EXPECT_EQ(code_of([] { NodeId(std::vector<AtomicNodeId>{}); }), ErrorCode::malformed_module);
}

TEST(AlphabetTest, Partition) {
  const Alphabet sigma({"p"}, {"t"}, {"x"});
  EXPECT_EQ(sigma.kind_of("p"), NodeKind::place);
  EXPECT_EQ(sigma.kind_of("t"), NodeKind::transition);
  EXPECT_EQ(sigma.kind_of("x"), NodeKind::abstract);
  EXPECT_TRUE(sigma.contains("x"));
  EXPECT_FALSE(sigma.contains("y"));
  EXPECT_EQ(code_of([] { Alphabet({"p"}, {"p"}); }), ErrorCode::malformed_module);
}

TEST(ModuleTest, IndicesFollowSlotOrder) {
  const Module m = Builder()
                       .place("a", "p").place("b", "q").place("c", "p").place("d", "p")
                       .left({"c", "b", "a", "d"})
                       .build();
  const auto slots = m.slots(Side::left);
  ASSERT_EQ(slots.size(), 4u);
  EXPECT_EQ(slots[0].index, 1u);  // c
  EXPECT_EQ(slots[1].index, 1u);  // b, the only q
  EXPECT_EQ(slots[2].index, 2u);  // a
  EXPECT_EQ(slots[3].index, 3u);  // d
  EXPECT_TRUE(m.slots(Side::right).empty());
}

TEST(ModuleTest, InteriorExcludesBothInterfaces) {
  const Module m = Builder()
                       .place("l", "p").place("r", "p").place("both", "p").place("in", "p")
                       .left({"l", "both"}).right({"r", "both"})
                       .build();
  const auto inner = m.interior();
  ASSERT_EQ(inner.size(), 1u);
  EXPECT_EQ(inner.begin()->str(), "in@1");
}

TEST(ModuleTest, RejectsMalformedInput) {
  const NodeId x(AtomicNodeId{1, "x"});
  const NodeId y(AtomicNodeId{1, "y"});
  const std::map<NodeId, NodeInfo> one = {{x, {"p", NodeKind::place}}};
  const std::map<NodeId, NodeInfo> trans = {{x, {"t", NodeKind::transition}}};
  EXPECT_EQ(code_of([&] { Module(one, {{x, y}}, {}, {}); }), ErrorCode::malformed_module);
  EXPECT_EQ(code_of([&] { Module(one, {}, {y}, {}); }), ErrorCode::malformed_module);
  EXPECT_EQ(code_of([&] { Module(one, {}, {}, {x, x}); }), ErrorCode::malformed_module);
  EXPECT_EQ(code_of([&] { Module(trans, {}, {}, {}, {{x, 1}}); }), ErrorCode::malformed_module);
  // Two nodes sharing an atom.
  const NodeId xy = NodeId::merge(x, y);
  const std::map<NodeId, NodeInfo> overlap = {{x, {"p", NodeKind::place}}, {xy, {"p", NodeKind::place}}};
  EXPECT_EQ(code_of([&] { Module(overlap, {}, {}, {}); }), ErrorCode::malformed_module);
}

TEST(ModuleTest, ZeroTokensAreDropped) {
  const NodeId x(AtomicNodeId{1, "x"});
  const Module m({{x, {"p", NodeKind::place}}}, {}, {}, {}, {{x, 0}});
  EXPECT_TRUE(m.marking().empty());
  EXPECT_EQ(m.tokens(x), 0u);
}

TEST(ModuleTest, WellFormedIndices) {
  const Module m = Builder().place("a", "p").place("b", "p").left({"a", "b"}).right({"b"}).build();
  EXPECT_TRUE(well_formedness_violations(m).empty());
  EXPECT_EQ(m.total_tokens(), 0u);
}

TEST(ModuleTest, LabelIndicesOfLooseSequence) {
  const Module m = Builder().place("a", "p").place("b", "q").place("c", "p").build();
  const Interface seq = {NodeId(AtomicNodeId{1, "a"}), NodeId(AtomicNodeId{1, "b"}),
                         NodeId(AtomicNodeId{1, "c"})};
  EXPECT_EQ(label_indices(seq, m.nodes()), (std::vector<std::size_t>{1, 1, 2}));
}

TEST(ModuleTest, NameIsCarriedButOptional) {
  const Module m = Builder().place("a", "p").build("M");
  EXPECT_EQ(m.name(), "M");
  EXPECT_FALSE(m.with_name(std::nullopt).name().has_value());
}

TEST(ErrorTest, MessageCarriesCodeName) {
  const Error e(ErrorCode::unbound_name, "x");
  EXPECT_EQ(std::string(e.what()), "UnboundName: x");
  EXPECT_EQ(to_string(ErrorCode::non_disjoint_operands), "NonDisjointOperands");
}
