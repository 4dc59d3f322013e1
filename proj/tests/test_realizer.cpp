#include <gtest/gtest.h>

#include <random>

#include "mucont/error.hpp"
#include "mucont/fixpoint.hpp"
#include "mucont/realizer.hpp"
#include "mucont/representations.hpp"
#include "support/instances.hpp"

namespace mucont {
namespace {

// g(x) = sign * x on the value grid of a signed-digit instance.
Multifunction scale_map(const RepresentationInstance& inst, int sign) {
  const auto pts = inst.values->points();
  std::vector<std::vector<PointIndex>> v(pts.size());
  for (PointIndex i = 0; i < pts.size(); ++i) {
    v[i] = {static_cast<PointIndex>(*inst.values->find_point(sign > 0 ? pts[i] : -pts[i]))};
  }
  return Multifunction(inst.values, inst.values, std::move(v));
}

RealizerProblem problem(std::uint32_t p, int sign) {
  auto inst = make_instance("signed_digit", p);
  auto g = scale_map(inst, sign);
  return RealizerProblem{inst, inst, std::move(g), Modulus::identity(kInstanceModulusDepth), std::nullopt,
                         std::nullopt};
}

// The realizer on words: w -> the word whose value is sign * value(w), digit-wise negation.
Multifunction word_map(const RepresentationInstance& inst, int sign) {
  const auto& dom = *inst.words->cantor_domain();
  std::vector<std::vector<PointIndex>> v(dom.size());
  for (PointIndex i = 0; i < dom.size(); ++i) {
    auto digits = SignedDigitWord(dom[i]).digits();
    for (auto& d : digits) d *= sign;
    v[i] = {static_cast<PointIndex>(dom.index_of(SignedDigitWord::from_digits(digits).bits()))};
  }
  return Multifunction(inst.words, inst.words, std::move(v));
}

TEST(RealizerConditions, IdentityRealizer) {
  auto p = problem(3, 1);
  p.candidate = word_map(p.xi, 1);
  const auto c = realizer_conditions(p);
  EXPECT_TRUE(c.realizes);
  EXPECT_TRUE(c.pushforward);
  EXPECT_TRUE(c.pullback);
  EXPECT_FALSE(c.witness.has_value());
}

TEST(RealizerConditions, NegationRealizer) {
  auto p = problem(3, -1);
  p.candidate = word_map(p.xi, -1);
  const auto c = realizer_conditions(p);
  EXPECT_TRUE(c.realizes && c.pushforward && c.pullback);
  // the identity on words does not realize negation
  p.candidate = word_map(p.xi, 1);
  const auto bad = realizer_conditions(p);
  EXPECT_FALSE(bad.realizes || bad.pushforward || bad.pullback);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_NE(sigma_decode(SignedDigitWord(p.xi.words->cantor_domain()->members()[*bad.witness])), Dyadic(0));
}

TEST(RealizerConditions, Errors) {
  auto p = problem(2, 1);
  EXPECT_THROW(realizer_conditions(p), PreconditionError);
  const auto& w = p.xi.words;
  std::vector<std::vector<PointIndex>> v(w->size(), std::vector<PointIndex>{0, 1});
  p.candidate = Multifunction(w, w, v);
  EXPECT_THROW(realizer_conditions(p), PreconditionError);
}

TEST(RealizerConditions, AgreeOnRandomCandidates) {
  testing::Rng rng(71);
  auto p = problem(2, 1);
  const auto& w = p.xi.words;
  const auto good = word_map(p.xi, 1);
  int realizers = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<PointIndex>> v(w->size());
    for (PointIndex i = 0; i < w->size(); ++i) {
      // mostly correct with a few perturbations, so both outcomes occur
      v[i] = {testing::coin(rng, 0.9) ? good.values(i)[0] : testing::uniform(rng, 0, w->size() - 1)};
    }
    p.candidate = Multifunction(w, w, std::move(v));
    const auto c = realizer_conditions(p);
    EXPECT_TRUE(c.agree()) << trial;
    realizers += c.realizes ? 1 : 0;
  }
  EXPECT_GT(realizers, 10);
  EXPECT_LT(realizers, 290);
}

TEST(ForwardModulus, IdentityCandidate) {
  auto p = problem(3, 1);
  p.candidate = word_map(p.xi, 1);
  p.candidate_modulus = Modulus::identity(kInstanceModulusDepth);
  const auto f = forward_modulus(p);
  EXPECT_TRUE(f.verified);
  EXPECT_EQ(f.modulus, modulus_compose(p.upsilon.mu, modulus_compose(*p.candidate_modulus, *p.xi.mu_prime)));
}

TEST(ForwardModulus, BinaryRepresentation) {
  auto inst = make_instance("binary", 4);
  std::vector<std::vector<PointIndex>> v(inst.values->size());
  for (PointIndex i = 0; i < v.size(); ++i) v[i] = {i};
  RealizerProblem p{inst, inst, Multifunction(inst.values, inst.values, v), Modulus::identity(64),
                    Multifunction::identity(inst.words), Modulus::identity(64)};
  EXPECT_THROW(forward_modulus(p), PreconditionError);
  const auto f = forward_modulus(p, Modulus::identity(64));
  EXPECT_TRUE(f.verified);
  EXPECT_EQ(f.modulus, Modulus::identity(64));
}

TEST(ForwardModulus, TooSmallCandidateModulusIsRejected) {
  auto p = problem(3, -1);
  p.candidate = word_map(p.xi, -1);
  p.candidate_modulus = Modulus::tabulate(64, [](std::uint32_t k) { return Dyadic::pow2(-1 - static_cast<std::int64_t>(k)); });
  try {
    forward_modulus(p);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("candidate_modulus"), std::string::npos);
  }
}

TEST(Synthesis, TwoWordToy) {
  // xi = upsilon = identity on the words 0 and 1.
  const auto words = make_space(FiniteMetricSpace::cantor(CantorDomain::full(1)));
  const auto id = Multifunction::identity(words);
  const RepresentationInstance rep{"toy", 1, words, words, id, id, Modulus::identity(8), Modulus::identity(8)};
  const Multifunction swap(words, words, {{1}, {0}});
  const RealizerProblem p{rep, rep, swap, Modulus::identity(8), std::nullopt, std::nullopt};
  const auto s = synthesize_realizer(p);
  EXPECT_EQ(s.realizer, swap);
}

TEST(Synthesis, RejectsDiscontinuousG) {
  const auto words = make_space(FiniteMetricSpace::cantor(CantorDomain::full(1)));
  const auto id = Multifunction::identity(words);
  const RepresentationInstance rep{"toy", 1, words, words, id, id, Modulus::identity(8), Modulus::identity(8)};
  const Multifunction swap(words, words, {{1}, {0}});
  const RealizerProblem p{rep, rep, swap, Modulus::constant(8, Dyadic::pow2(-1)), std::nullopt, std::nullopt};
  EXPECT_THROW(synthesize_realizer(p), ContinuityError);
}

TEST(Synthesis, ReportsLostCodes) {
  // Codes 0 and 1 denote 0 and 1/2; g sends everything to 1, which has no code.
  const auto words = make_space(FiniteMetricSpace::cantor(CantorDomain::full(1)));
  const auto values = make_space(FiniteMetricSpace::line({Dyadic(0), Dyadic::pow2(-1), Dyadic(1)}));
  const Multifunction fwd(words, values, {{0}, {1}});
  const RepresentationInstance rep{"toy", 1, words, values, fwd, mf_inverse(fwd), Modulus::identity(8),
                                   Modulus::identity(8)};
  const Multifunction g(values, values, {{2}, {2}, {2}});
  const RealizerProblem p{rep, rep, g, Modulus::identity(8), std::nullopt, std::nullopt};
  try {
    synthesize_realizer(p);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("lose 2 codes"), std::string::npos) << e.what();
  }
}

class SignedDigitSynthesis : public ::testing::TestWithParam<int> {};

TEST_P(SignedDigitSynthesis, CertifiedAtFourT) {
  const std::uint32_t precision = 8;
  auto p = problem(precision, GetParam());
  const auto s = synthesize_realizer(p);
  EXPECT_TRUE(s.realizer.is_single_valued());
  EXPECT_TRUE(s.realizer.is_total());
  const auto expected = modulus_compose(*p.upsilon.mu_prime, modulus_compose(p.kappa, p.xi.mu));
  EXPECT_EQ(s.certified, expected);
  for (std::uint32_t n = 1; 2 * n <= expected.depth(); ++n) {
    const auto t = Dyadic::pow2(-2 * static_cast<std::int64_t>(n));
    EXPECT_EQ(expected.eval(t), Dyadic(4) * t) << n;
  }
  EXPECT_TRUE(verify_selection_modulus(s.realizer, s.certified, realizer_relation(p)).ok);
  // independent check on sampled pairs with exact distances
  testing::Rng rng(72);
  const auto& words = *s.realizer.domain();
  for (int i = 0; i < 20000; ++i) {
    const auto a = testing::uniform(rng, 0, words.size() - 1), b = testing::uniform(rng, 0, words.size() - 1);
    ASSERT_LE(words.dist(s.realizer.values(a)[0], s.realizer.values(b)[0]), s.certified.eval(words.dist(a, b)));
  }

  p.candidate = s.realizer;
  const auto c = realizer_conditions(p);
  EXPECT_TRUE(c.realizes && c.pushforward && c.pullback);

  // round trip: feed the certified table back as K
  p.candidate_modulus = s.certified;
  const auto fm = forward_modulus(p);
  EXPECT_TRUE(fm.verified);
  const auto remark =
      modulus_compose(p.upsilon.mu, modulus_compose(*p.upsilon.mu_prime,
                                                    modulus_compose(p.kappa, modulus_compose(*p.xi.mu_prime, p.xi.mu))));
  EXPECT_TRUE(decide_continuity(p.g, remark).continuous);
}

INSTANTIATE_TEST_SUITE_P(Maps, SignedDigitSynthesis, ::testing::Values(1, -1),
                         [](const auto& info) { return info.param > 0 ? "identity" : "negation"; });

}  // namespace
}  // namespace mucont
