#include <gtest/gtest.h>

#include <fstream>

#include "mucont/error.hpp"
#include "mucont/representations.hpp"
#include "mucont/serialization.hpp"
#include "support/instances.hpp"

namespace mucont {
namespace {

Json load(const std::string& name) {
  std::ifstream in(std::string(MUCONT_DATA_DIR) + "/" + name);
  return Json::parse(in);
}

std::string format_error(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

TEST(Serialization, DyadicRoundTrip) {
  for (const auto* s : {"0/2^0", "3/2^5", "-7/2^1", "12/2^0"}) {
    const auto v = Dyadic::parse(s);
    EXPECT_EQ(dyadic_from_json(dyadic_to_json(v), "x"), v);
  }
  EXPECT_EQ(dyadic_from_json(Json(5), "x"), Dyadic(5));
  EXPECT_NE(format_error([] { dyadic_from_json(Json("1/3"), "x.y"); }).find("x.y"), std::string::npos);
}

TEST(Serialization, ModulusRoundTrip) {
  for (const auto& m : {Modulus::identity(10), sqrt_modulus(20), square_modulus(5), log_modulus(30)})
    EXPECT_EQ(modulus_from_json(modulus_to_json(m)), m);
  EXPECT_EQ(modulus_from_json(load("identity-modulus.json")), Modulus::identity(64));
  EXPECT_NE(format_error([] { modulus_from_json(Json{{"depth", 2}, {"values", {"1", "1/2"}}}); }).find("modulus.values"),
            std::string::npos);
  EXPECT_NE(format_error([] { modulus_from_json(Json{{"depth", 1}, {"values", {"1/2", "1"}}}); }).find("modulus.values"),
            std::string::npos);
  EXPECT_NE(format_error([] { modulus_from_json(Json{{"values", {"1", "1/2"}}}); }).find("modulus.depth"),
            std::string::npos);
}

TEST(Serialization, SpaceRoundTrip) {
  testing::Rng rng(81);
  for (int trial = 0; trial < 30; ++trial) {
    for (const auto& s : {testing::random_cantor_space(rng, 5, 8), testing::random_line_space(rng, 5, 4),
                          testing::random_table_space(rng, 4)}) {
      EXPECT_TRUE(space_from_json(space_to_json(*s), "space") == *s);
    }
  }
  EXPECT_NE(format_error([] { space_from_json(Json{{"words", {"01", "0a"}}}, "s"); }).find("s.words"),
            std::string::npos);
}

TEST(Serialization, MultifunctionRoundTrip) {
  testing::Rng rng(82);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = testing::coin(rng) ? testing::random_cantor_space(rng, 4, 8) : testing::random_line_space(rng, 4, 3);
    const auto f = testing::random_multifunction(rng, x, testing::random_table_space(rng, 4), 3, 0.2);
    const auto back = multifunction_from_json(multifunction_to_json(f));
    EXPECT_TRUE(*back.domain() == *f.domain());
    EXPECT_EQ(back.pairs(), f.pairs());
  }
}

TEST(Serialization, ImplicitWordDomain) {
  const auto f = multifunction_from_json(load("cantor-select.json"));
  EXPECT_EQ(f.domain()->kind(), FiniteMetricSpace::Kind::cantor);
  EXPECT_TRUE(f.codomain()->ultrametric());
  const auto g = multifunction_from_json(load("binary-inverse-p3.json"));
  EXPECT_EQ(g.domain()->size(), 3U);
  EXPECT_EQ(g.pair_count(), 6U);
}

TEST(Serialization, MultifunctionErrorsNameTheField) {
  auto j = load("binary-inverse-p3.json");
  j["graph"][1][1] = "111";
  EXPECT_NE(format_error([&] { multifunction_from_json(j); }).find("multifunction.graph[1][1]"), std::string::npos);
  Json k = Json{{"precision", 2}, {"codomain", {{"words", {"0", "1"}}}}, {"graph", Json::array({Json::array({"011", "0"})})}};
  EXPECT_NE(format_error([&] { multifunction_from_json(k); }).find("multifunction.graph[0][0]"), std::string::npos);
  Json m = Json{{"precision", 2}, {"graph", Json::array()}};
  EXPECT_NE(format_error([&] { multifunction_from_json(m); }).find("multifunction.codomain"), std::string::npos);
}

TEST(Serialization, Problems) {
  const auto p = problem_from_json(load("id-signed.json"));
  EXPECT_EQ(p.xi.precision, 8U);
  EXPECT_EQ(p.g, Multifunction::identity(p.xi.values));
  const auto n = problem_from_json(load("neg-signed.json"));
  for (PointIndex i = 0; i < n.xi.values->size(); ++i)
    EXPECT_EQ(n.xi.values->points()[n.g.values(i)[0]], -n.xi.values->points()[i]);
  auto bad = load("id-signed.json");
  bad["g"] = "square";
  EXPECT_NE(format_error([&] { problem_from_json(bad); }).find("problem.g"), std::string::npos);
  bad = load("id-signed.json");
  bad["xi"]["precision"] = 99;
  EXPECT_NE(format_error([&] { problem_from_json(bad); }).find("problem.xi.precision"), std::string::npos);
}

TEST(Serialization, InstanceRoundTrip) {
  const auto inst = make_instance("signed_digit", 3);
  const auto j = instance_to_json(inst);
  const auto back = instance_from_json(j, "inst");
  EXPECT_EQ(back.name, "signed_digit");
  EXPECT_EQ(back.forward.pairs(), inst.forward.pairs());
}

TEST(Serialization, CertificateAndOracle) {
  const auto c = certificate_to_json(check_geometric(log_modulus(1U << 20), Dyadic(10)));
  EXPECT_EQ(c["witness_scale"], 0);
  const auto ce = binary_inverse_counterexample(3);
  const auto o = oracle_result_to_json(ce.result, ce.inverse);
  EXPECT_EQ(o["continuous"], false);
  ASSERT_TRUE(o.contains("chain"));
  EXPECT_EQ(o["chain"][0], "1/2^1");
}

}  // namespace
}  // namespace mucont
