#include <doctest.h>

#include <cmath>
#include <random>

#include "dsc/error.hpp"
#include "dsc/relevance.hpp"
#include "test_helpers.hpp"

using namespace dsc;
using dsc::testing::add_event;
using dsc::testing::make_role;

namespace {

std::vector<double> random_nonnegative(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::uniform_int_distribution<int> zero(0, 3);
  std::vector<double> out(n);
  for (auto& x : out) x = zero(rng) == 0 ? 0.0 : value(rng);
  return out;
}

}  // namespace

TEST_CASE("cosine_relevance basics") {
  const std::vector<double> v = {0.2, 0.0, 0.7};
  CHECK(cosine_relevance(v, v) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> a = {1, 0, 1};
  const std::vector<double> b = {1, 1, 0};
  CHECK(cosine_relevance(a, b) == doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<double> zero = {0, 0, 0};
  CHECK(cosine_relevance(zero, b) == 0.0);  // zero-vector policy
  CHECK(cosine_relevance(b, zero) == 0.0);
  CHECK(cosine_relevance(zero, zero) == 0.0);

  const std::vector<double> shorter = {1.0, 2.0};
  CHECK_THROWS_WITH_AS(cosine_relevance(a, shorter), doctest::Contains("dimension"),
                       ValidationError);
}

TEST_CASE("cosine_relevance stays in [0,1] on non-negative vectors") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 64);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = dim(rng);
    const auto u = random_nonnegative(rng, n);
    const auto v = random_nonnegative(rng, n);
    const double s = cosine_relevance(u, v);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(std::isfinite(s));
  }
}

TEST_CASE("cosine_relevance is scale invariant and symmetric") {
  std::mt19937 rng(6);
  std::uniform_int_distribution<std::size_t> dim(1, 32);
  std::uniform_real_distribution<double> log_scale(-6.0, 6.0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = dim(rng);
    const auto u = random_nonnegative(rng, n);
    const auto v = random_nonnegative(rng, n);
    const double base = cosine_relevance(u, v);
    CHECK(cosine_relevance(v, u) == base);  // symmetric, bit for bit

    const double alpha = std::pow(10.0, log_scale(rng));
    const double beta = std::pow(10.0, log_scale(rng));
    auto su = u;
    auto sv = v;
    for (auto& x : su) x *= alpha;
    for (auto& x : sv) x *= beta;
    CHECK(std::abs(cosine_relevance(su, sv) - base) <= 1e-12);
  }
}

TEST_CASE("classify uses an inclusive threshold") {
  CHECK(classify(0.7654, 0.3) == RelevanceLabel::High);
  CHECK(classify(0.2465, 0.3) == RelevanceLabel::Low);
  CHECK(classify(0.3, 0.3) == RelevanceLabel::High);  // boundary is High
  CHECK(classify_static01(12, 7) == RelevanceLabel::High);
  CHECK(classify_static01(7, 7) == RelevanceLabel::High);
  CHECK(classify_static01(6, 7) == RelevanceLabel::Low);
}

TEST_CASE("classify is monotone in the score") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double tau = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    const double a = unit(rng);
    const double b = unit(rng);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    if (classify(lo, tau) == RelevanceLabel::High) {
      CHECK(classify(hi, tau) == RelevanceLabel::High);
    }
  }
}

TEST_CASE("static01_score counts coinciding interests") {
  const StaticInterestProfile profile{"r", {1, 0, 1, 1}};
  CHECK(static01_score(profile, std::vector<std::uint8_t>{1, 1, 1, 0}) == 2);
  CHECK(static01_score({"r", {0, 0, 0, 0}}, std::vector<std::uint8_t>{1, 1, 1, 1}) == 0);
  CHECK(static01_score({"r", {1, 1, 1, 1}}, std::vector<std::uint8_t>{1, 0, 1, 1}) == 3);
  CHECK_THROWS_WITH_AS(static01_score(profile, std::vector<std::uint8_t>{1}),
                       doctest::Contains("dimension"), ValidationError);
}

TEST_CASE("static01_score equals brute-force enumeration") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<std::size_t> dim(1, 64);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = dim(rng);
    StaticInterestProfile profile{"r", std::vector<std::uint8_t>(n)};
    std::vector<std::uint8_t> presence(n);
    for (auto& x : profile.interests) x = static_cast<std::uint8_t>(bit(rng));
    for (auto& x : presence) x = static_cast<std::uint8_t>(bit(rng));
    int brute = 0;
    for (std::size_t j = 0; j < n; ++j) brute += (profile.interests[j] == 1 && presence[j] == 1);
    CHECK(static01_score(profile, presence) == brute);
  }
}

TEST_CASE("static_interest_profile binarizes the role's event history") {
  Corpus corpus;
  corpus.add_role(make_role("r1"));
  corpus.add_role(make_role("fresh"));
  add_event(corpus, "e1", "layout plan");
  add_event(corpus, "e2", "cost plan");
  corpus.link_role_relevance("r1", "e1");
  corpus.freeze();

  const CfRegistry registry({{1, {"layout"}, ContextCategory::Object, 0.3},
                             {2, {"cost"}, ContextCategory::Task, 0.3},
                             {3, {"plan"}, ContextCategory::Task, 0.0}});
  const auto profile = static_interest_profile("r1", corpus, registry);
  CHECK(profile.interests == std::vector<std::uint8_t>{1, 0, 1});
  // no history, no interests
  CHECK(static_interest_profile("fresh", corpus, registry).interests ==
        std::vector<std::uint8_t>{0, 0, 0});
  CHECK_THROWS_AS(static_interest_profile("ghost", corpus, registry), ValidationError);
}

TEST_CASE("recommend_dsc ranks by score with role-id tie-break") {
  const EventVector event{"e1", {1.0, 0.0}};
  const std::vector<RoleVector> roles = {
      {"rb", {1.0, 0.0}},   // score 1
      {"ra", {1.0, 0.0}},   // score 1, ties with rb, ra first
      {"rc", {1.0, 1.0}},   // score 1/sqrt(2)
      {"rd", {0.0, 1.0}},   // score 0
  };
  const Recommendation rec = recommend_dsc(event, roles, 0.5);
  REQUIRE(rec.ranking.size() == 4);
  CHECK(rec.ranking[0].role_id == "ra");
  CHECK(rec.ranking[1].role_id == "rb");
  CHECK(rec.ranking[2].role_id == "rc");
  CHECK(rec.ranking[3].role_id == "rd");
  CHECK(rec.model == Model::Dsc);
  CHECK(rec.high_set() == std::set<std::string>{"ra", "rb", "rc"});

  // scores are descending and High entries precede lower-scored Low ones
  for (std::size_t i = 1; i < rec.ranking.size(); ++i) {
    CHECK(rec.ranking[i - 1].score >= rec.ranking[i].score);
  }

  // all-zero role vectors are never recommended
  const std::vector<RoleVector> silent = {{"r1", {0.0, 0.0}}, {"r2", {0.0, 0.0}}};
  CHECK(recommend_dsc(event, silent, 0.3).high_set().empty());
}

TEST_CASE("recommend_static01 ranks by integer score") {
  const std::vector<StaticInterestProfile> profiles = {
      {"ra", {1, 1, 0}}, {"rb", {1, 1, 1}}, {"rc", {0, 0, 1}}};
  const std::vector<std::uint8_t> presence = {1, 1, 1};
  const Recommendation rec = recommend_static01("e1", presence, profiles, 2);
  REQUIRE(rec.ranking.size() == 3);
  CHECK(rec.ranking[0].role_id == "rb");
  CHECK(rec.ranking[0].score == 3.0);
  CHECK(rec.ranking[1].role_id == "ra");
  CHECK(rec.ranking[2].role_id == "rc");
  CHECK(rec.high_set() == std::set<std::string>{"ra", "rb"});
}
