#include <gtest/gtest.h>

#include <set>

#include "mucont/error.hpp"
#include "mucont/multifunction.hpp"
#include "support/instances.hpp"

namespace mucont {
namespace {

using testing::Rng;

SpacePtr words(std::initializer_list<const char*> ws) {
  std::vector<Word> v;
  for (auto s : ws) v.push_back(Word::parse(s));
  return make_space(FiniteMetricSpace::cantor(CantorDomain(std::move(v))));
}

TEST(Multifunction, Basics) {
  const auto x = words({"00", "01", "10"});
  const auto y = words({"0", "1"});
  const Multifunction f(x, y, {{0, 1}, {}, {1}});
  EXPECT_EQ(f.dom(), (std::vector<PointIndex>{0, 2}));
  EXPECT_EQ(f.range(), (std::vector<PointIndex>{0, 1}));
  EXPECT_FALSE(f.is_total());
  EXPECT_FALSE(f.is_single_valued());
  EXPECT_EQ(f.pair_count(), 3U);
  EXPECT_TRUE(f.contains(0, 1));
  EXPECT_FALSE(f.contains(1, 0));
  EXPECT_THROW(Multifunction(x, y, {{0}, {2}, {0}}), PreconditionError);
  EXPECT_THROW(Multifunction(x, y, {{0}}), PreconditionError);
}

TEST(Multifunction, Hausdorff) {
  const auto s = make_space(FiniteMetricSpace::line({Dyadic(0), Dyadic::parse("1/2"), Dyadic(1)}));
  const std::vector<PointIndex> a{0}, b{1}, ab{0, 1}, all{0, 1, 2};
  EXPECT_EQ(hausdorff_distance(ab, ab, *s), Dyadic(0));
  EXPECT_EQ(hausdorff_distance(a, b, *s), Dyadic::parse("1/2"));
  EXPECT_EQ(hausdorff_distance(ab, b, *s), Dyadic::parse("1/2"));
  EXPECT_EQ(hausdorff_distance(a, all, *s), Dyadic(1));
  EXPECT_THROW(hausdorff_distance({}, a, *s), PreconditionError);
}

TEST(Multifunction, HausdorffMatchesBruteForce) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_table_space(rng, 5);
    std::vector<PointIndex> k, l;
    for (PointIndex i = 0; i < s->size(); ++i) {
      if (testing::coin(rng)) k.push_back(i);
      if (testing::coin(rng)) l.push_back(i);
    }
    if (k.empty()) k.push_back(0);
    if (l.empty()) l.push_back(1);
    Dyadic best(0);
    for (auto a : k) {
      Dyadic lo(1);
      for (auto b : l) lo = min(lo, s->dist(a, b));
      best = max(best, lo);
    }
    for (auto b : l) {
      Dyadic lo(1);
      for (auto a : k) lo = min(lo, s->dist(a, b));
      best = max(best, lo);
    }
    EXPECT_EQ(hausdorff_distance(k, l, *s), best);
  }
}

TEST(Multifunction, Inverse) {
  const auto x = words({"0", "1"});
  const auto y = words({"00", "01"});
  const Multifunction swap(x, y, {{1}, {0}});
  EXPECT_EQ(mf_inverse(swap), Multifunction(y, x, {{1}, {0}}));
  const Multifunction constant(x, y, {{0}, {0}});
  const auto inv = mf_inverse(constant);
  EXPECT_EQ(inv.values(0).size(), 2U);
  EXPECT_TRUE(inv.values(1).empty());
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testing::random_multifunction(rng, testing::random_cantor_space(rng, 3, 6),
                                                 testing::random_line_space(rng, 4, 3), 3, 0.2);
    EXPECT_EQ(mf_inverse(mf_inverse(f)), f);
  }
}

// (x, z) in G o F iff F(x) is nonempty, inside dom(G), and some y has z in G(y).
Multifunction reference_compose(const Multifunction& g, const Multifunction& f) {
  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  for (PointIndex x = 0; x < f.domain()->size(); ++x) {
    if (f.values(x).empty()) continue;
    bool inside = true;
    for (auto y : f.values(x)) inside = inside && !g.values(y).empty();
    if (!inside) continue;
    for (PointIndex z = 0; z < g.codomain()->size(); ++z) {
      bool hit = false;
      for (auto y : f.values(x)) hit = hit || g.contains(y, z);
      if (hit) pairs.emplace_back(x, z);
    }
  }
  return Multifunction::from_pairs(f.domain(), g.codomain(), pairs);
}

TEST(Multifunction, ComposeExamples) {
  const auto x = words({"0", "1"});
  const auto y = words({"00", "01"});
  const Multifunction f(x, y, {{0, 1}, {0}});
  EXPECT_EQ(mf_compose(Multifunction::identity(y), f), f);
  const Multifunction g(y, x, {{1}, {}});
  const auto gf = mf_compose(g, f);
  EXPECT_TRUE(gf.values(0).empty());
  EXPECT_EQ(gf.values(1).size(), 1U);
  EXPECT_THROW(mf_compose(f, f), PreconditionError);
}

TEST(Multifunction, ComposeMatchesBruteForce) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testing::random_cantor_space(rng, 2, 3);
    const auto b = testing::random_line_space(rng, 3, 2);
    const auto c = testing::random_table_space(rng, 3);
    const auto f = testing::random_multifunction(rng, a, b, 2, 0.2);
    const auto g = testing::random_multifunction(rng, b, c, 2, 0.3);
    EXPECT_EQ(mf_compose(g, f), reference_compose(g, f));
  }
}

TEST(Multifunction, Restriction) {
  const auto x = words({"0", "1"});
  const auto y = words({"00", "01"});
  const Multifunction f(x, y, {{0, 1}, {0}});
  const Multifunction sel(x, y, {{1}, {0}});
  EXPECT_TRUE(is_restriction(f, f));
  // A selection is easier than F: F is a restriction of it, not conversely.
  EXPECT_TRUE(is_restriction(f, sel));
  EXPECT_FALSE(is_restriction(sel, f));
  const Multifunction partial(x, y, {{0, 1}, {}});
  EXPECT_TRUE(is_restriction(partial, f));
  EXPECT_FALSE(is_restriction(f, partial));
}

TEST(Multifunction, CompositionIsMonotoneUnderRestriction) {
  Rng rng(13);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing::random_cantor_space(rng, 2, 4);
    const auto b = testing::random_line_space(rng, 4, 3);
    const auto c = testing::random_table_space(rng, 4);
    const auto f = testing::random_multifunction(rng, a, b, 3, 0.2);
    const auto g = testing::random_multifunction(rng, b, c, 3, 0.2);
    // F' adds values and drops arguments; G' likewise.
    auto widen = [&](const Multifunction& h) {
      std::vector<std::vector<PointIndex>> v(h.domain()->size());
      for (PointIndex x = 0; x < v.size(); ++x) {
        if (h.values(x).empty()) continue;
        std::set<PointIndex> s(h.values(x).begin(), h.values(x).end());
        if (testing::coin(rng, 0.4)) s.insert(testing::uniform(rng, 0, h.codomain()->size() - 1));
        v[x].assign(s.begin(), s.end());
      }
      for (auto& s : v)
        if (!s.empty() && testing::coin(rng, 0.15)) s.clear();
      return Multifunction(h.domain(), h.codomain(), std::move(v));
    };
    const auto f2 = widen(f), g2 = widen(g);
    ASSERT_TRUE(is_restriction(f2, f));
    ASSERT_TRUE(is_restriction(g2, g));
    EXPECT_TRUE(is_restriction(mf_compose(g2, f2), mf_compose(g, f)));
    ++checked;
  }
  EXPECT_EQ(checked, 300);
}

TEST(Multifunction, InverseCompositionLaws) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_cantor_space(rng, 3, 5);
    const auto b = testing::random_line_space(rng, 4, 3);
    const auto f = testing::random_multifunction(rng, a, b, 2, 0.0);
    // F^{-1} o F is a restriction of id_X.
    EXPECT_TRUE(is_restriction(mf_compose(mf_inverse(f), f), Multifunction::identity(a)));
    // F o F^{-1} is the identity on range(F) whenever F is single-valued.
    if (f.is_single_valued()) {
      const auto back = mf_compose(f, mf_inverse(f));
      for (PointIndex y = 0; y < b->size(); ++y) {
        const bool in_range = !mf_inverse(f).values(y).empty();
        EXPECT_EQ(back.values(y).size(), in_range ? 1U : 0U);
        if (in_range) EXPECT_EQ(back.values(y)[0], y);
      }
    }
  }
}

}  // namespace
}  // namespace mucont
