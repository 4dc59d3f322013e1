#include <gtest/gtest.h>

#include "mucont/chain_oracle.hpp"
#include "mucont/error.hpp"
#include "mucont/fixpoint.hpp"
#include "mucont/representations.hpp"
#include "support/instances.hpp"

namespace mucont {
namespace {

using testing::Rng;

struct Instance {
  Multifunction f;
  Modulus mu;
};

Instance random_instance(Rng& rng) {
  const auto x = testing::random_cantor_space(rng, 3, 6);
  SpacePtr y;
  switch (testing::uniform(rng, 0, 2)) {
    case 0: y = testing::random_cantor_space(rng, 2, 4); break;
    case 1: y = testing::random_line_space(rng, testing::uniform(rng, 1, 4), 2); break;
    default: y = testing::random_table_space(rng, testing::uniform(rng, 1, 4)); break;
  }
  return {testing::random_multifunction(rng, x, y, 3, 0.15), testing::random_modulus(rng, 4)};
}

TEST(RelationSet, Basics) {
  RelationSet r(3, 2);
  EXPECT_TRUE(r.empty());
  r.insert(0, 1);
  r.insert(2, 0);
  EXPECT_EQ(r.size(), 2U);
  EXPECT_EQ(r.section(0), std::vector<PointIndex>{1});
  RelationSet s = r;
  s.erase(0, 1);
  EXPECT_TRUE(s.subset_of(r));
  EXPECT_FALSE(r.subset_of(s));
  EXPECT_EQ(r.intersect(s), s);
  EXPECT_EQ(r.pairs(), (std::vector<std::pair<PointIndex, PointIndex>>{{0, 1}, {2, 0}}));
}

TEST(RelationSet, FullProductUsesDom) {
  Rng rng(1);
  const auto x = testing::random_cantor_space(rng, 2, 4);
  const auto y = testing::random_line_space(rng, 3, 2);
  std::vector<std::vector<PointIndex>> v(x->size());
  v[0] = {1};
  const Multifunction f(x, y, v);
  const auto full = RelationSet::full_product(f);
  EXPECT_EQ(full.size(), y->size());
  EXPECT_EQ(RelationSet::graph(f).size(), 1U);
}

TEST(Fixpoint, DeltaMatchesQuantifierBlock) {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [f, mu] = random_instance(rng);
    const auto r = testing::random_relation(rng, f, 0.6);
    EXPECT_EQ(delta_step(f, mu, r), testing::reference_delta(f, mu, r)) << trial;
    const auto full = RelationSet::full_product(f);
    EXPECT_EQ(delta_step(f, mu, full), testing::reference_delta(f, mu, full)) << trial;
  }
}

TEST(Fixpoint, DeltaExamples) {
  // Single-valued continuous F keeps its graph.
  const auto inst = make_instance("binary", 3);
  const auto full = RelationSet::full_product(inst.forward);
  const auto step = delta_step(inst.forward, inst.mu, full);
  EXPECT_TRUE(RelationSet::graph(inst.forward).subset_of(step));
  // Empty set is the least fixed point.
  const RelationSet empty(inst.forward.domain()->size(), inst.forward.codomain()->size());
  EXPECT_TRUE(delta_step(inst.forward, inst.mu, empty).empty());
}

TEST(Fixpoint, PrunesIsolatedValue) {
  // x = 0, 1 in the line at distance 1/4; F(0) = {0}, F(1) = {0, 1} with
  // e(0, 1) = 1 and mu = identity: (1, 1) has no partner at x = 0.
  const auto x = make_space(FiniteMetricSpace::line({Dyadic(0), Dyadic::parse("1/4")}));
  const auto y = make_space(FiniteMetricSpace::line({Dyadic(0), Dyadic(1)}));
  const Multifunction f(x, y, {{0}, {0, 1}});
  const auto mu = Modulus::identity(8);
  const auto fix = greatest_fixpoint(f, mu);
  EXPECT_TRUE(fix.relation.contains(0, 0));
  EXPECT_TRUE(fix.relation.contains(1, 0));
  EXPECT_FALSE(fix.relation.contains(1, 1));
  EXPECT_TRUE(decide_continuity(f, mu).continuous);
  EXPECT_EQ(testing::reference_delta(f, mu, RelationSet::graph(f)), fix.relation);
}

TEST(Fixpoint, DecisionExamples) {
  const auto words = make_space(FiniteMetricSpace::cantor(CantorDomain::full(3)));
  EXPECT_TRUE(decide_continuity(Multifunction::identity(words), Modulus::identity(8)).continuous);
  const auto ce = binary_inverse_counterexample(3);
  const auto d = decide_continuity(ce.inverse, ce.modulus);
  EXPECT_FALSE(d.continuous);
  ASSERT_TRUE(d.witness.has_value());
  EXPECT_TRUE(d.fixpoint.relation.section(*d.witness).empty());
}

TEST(Fixpoint, Laws) {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [f, mu] = random_instance(rng);
    const auto a = testing::random_relation(rng, f, 0.7);
    const auto b = a.intersect(testing::random_relation(rng, f, 0.8));
    // deflationary
    EXPECT_TRUE(delta_step(f, mu, a).subset_of(a));
    // monotone
    EXPECT_TRUE(delta_step(f, mu, b).subset_of(delta_step(f, mu, a)));
    // descending chain of length 4
    std::vector<RelationSet> chain{RelationSet::full_product(f)};
    for (int i = 0; i < 3; ++i) chain.push_back(chain.back().intersect(testing::random_relation(rng, f, 0.8)));
    auto meet = chain[0];
    auto step_meet = delta_step(f, mu, chain[0]);
    for (std::size_t i = 1; i < chain.size(); ++i) {
      meet = meet.intersect(chain[i]);
      step_meet = step_meet.intersect(delta_step(f, mu, chain[i]));
    }
    EXPECT_EQ(delta_step(f, mu, meet), step_meet);
    // greatest fixed point: fixed, and contains every post-fixed point found by
    // iterating from a random start
    const auto fix = greatest_fixpoint(f, mu);
    EXPECT_EQ(delta_step(f, mu, fix.relation), fix.relation);
    const auto other = iterate_to_fixpoint(f, mu, a);
    EXPECT_TRUE(other.relation.subset_of(fix.relation));
    EXPECT_LE(fix.iterations, f.domain()->size() * f.codomain()->size());
  }
}

TEST(Fixpoint, AgreesWithChainOracle) {
  Rng rng(43);
  int continuous = 0, refuted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto [f, mu] = random_instance(rng);
    const auto d = decide_continuity(f, mu);
    EXPECT_EQ(d.continuous, chain_continuity_oracle(f, mu, 4).continuous) << trial;
    (d.continuous ? continuous : refuted)++;
  }
  EXPECT_GT(continuous, 20);
  EXPECT_GT(refuted, 20);
}

TEST(Fixpoint, ClosenessIndexMatchesExactDistances) {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [f, mu] = random_instance(rng);
    const ClosenessIndex idx(f, mu);
    for (PointIndex x = 0; x < f.domain()->size(); ++x)
      for (PointIndex x2 = 0; x2 < f.domain()->size(); ++x2)
        for (PointIndex y = 0; y < f.codomain()->size(); ++y)
          for (PointIndex y2 = 0; y2 < f.codomain()->size(); ++y2)
            ASSERT_EQ(idx.close(x, y, x2, y2), testing::close(f, mu, x, y, x2, y2));
  }
}

TEST(Fixpoint, RejectsForeignRelation) {
  const auto inst = make_instance("binary", 2);
  EXPECT_THROW(delta_step(inst.forward, inst.mu, RelationSet(1, 1)), PreconditionError);
}

}  // namespace
}  // namespace mucont
