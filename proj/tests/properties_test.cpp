#include <gtest/gtest.h>

#include "heraklit/properties.hpp"
#include "heraklit/random.hpp"

using namespace heraklit;

TEST(Properties, SmallRunsPass) {
  for (const auto& r : props::run_all(7, 60)) {
    EXPECT_TRUE(r.passed()) << r.name << ": " << r.first_failure;
    EXPECT_EQ(r.well_formedness_failures, 0u) << r.name;
    EXPECT_GT(r.well_formedness_checks, 0u) << r.name;
  }
}

TEST(Properties, SeedReproducible) {
  gen::Generator a(11), b(11);
  for (int i = 0; i < 20; ++i) {
    const Module x = a.module(), y = b.module();
    EXPECT_EQ(x.nodes(), y.nodes());
    EXPECT_EQ(x.edges(), y.edges());
    EXPECT_EQ(x.left(), y.left());
    EXPECT_EQ(x.right(), y.right());
  }
}

TEST(Generator, ModulesStayInBounds) {
  gen::Generator g(3);
  const auto& sigma = gen::Generator::alphabet();
  bool saw_empty = false, saw_overlap = false, saw_non_bipartite = false;
  for (int i = 0; i < 500; ++i) {
    const Module m = g.module();
    EXPECT_LE(m.nodes().size(), 12u);
    saw_empty |= m.empty();
    for (const auto& [id, info] : m.nodes()) EXPECT_EQ(sigma.kind_of(info.label), info.kind);
    for (const auto& id : m.left()) {
      for (const auto& jd : m.right()) saw_overlap |= id == jd;
    }
    for (const auto& [u, v] : m.edges()) saw_non_bipartite |= m.info(u).kind == m.info(v).kind;
  }
  EXPECT_TRUE(saw_empty);
  EXPECT_TRUE(saw_overlap);
  EXPECT_TRUE(saw_non_bipartite);
}

TEST(Generator, NetsHaveNoIsolatedElements) {
  gen::Generator g(4);
  for (int i = 0; i < 100; ++i) {
    const NetView net = g.net();
    EXPECT_LE(net.transitions.size(), 15u);
    EXPECT_LE(net.places.size(), 20u);
    std::set<NodeId> touched;
    for (const auto& [a, b] : net.flow) {
      touched.insert(a);
      touched.insert(b);
      EXPECT_NE(net.places.contains(a), net.places.contains(b));
    }
    EXPECT_EQ(touched.size(), net.places.size() + net.transitions.size());
  }
}
