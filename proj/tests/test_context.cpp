#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dsc/context.hpp"
#include "dsc/error.hpp"
#include "test_helpers.hpp"

using namespace dsc;
using dsc::testing::add_event;

namespace {

Corpus three_event_corpus() {
  Corpus corpus;
  add_event(corpus, "e1", "alpha beta");
  add_event(corpus, "e2", "beta gamma");
  add_event(corpus, "e3", "alpha beta gamma");
  corpus.freeze();
  return corpus;
}

std::vector<std::string> pat(std::initializer_list<const char*> tokens) {
  return {tokens.begin(), tokens.end()};
}

}  // namespace

TEST_CASE("compute_ief reproduces the frozen reference statistics") {
  // document frequencies recovered by inverting the table under log10
  const struct {
    std::size_t df;
    double expected;
  } rows[] = {{3, 1.4366926}, {12, 0.83463261}, {28, 0.46665582}, {9, 0.95957134},
              {12, 0.83463261}};
  for (const auto& row : rows) {
    const double ief = compute_ief(82, row.df);
    CHECK(std::abs(ief - row.expected) <= 5e-5);
    CHECK(ief == std::log10(82.0 / static_cast<double>(row.df)));
  }
}

TEST_CASE("compute_ief edge cases") {
  CHECK(compute_ief(82, 82) == 0.0);  // a term in every event has no discrimination
  CHECK(compute_ief(10, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(compute_ief(82, 0), doctest::Contains("df = 0"), ValidationError);
  CHECK_THROWS_AS(compute_ief(82, 83), ValidationError);
  CHECK_THROWS_AS(compute_ief(0, 0), ValidationError);
}

TEST_CASE("ief is strictly decreasing in df and peaks at df=1") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> total_of(2, 2000);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t total = total_of(rng);
    std::uniform_int_distribution<std::size_t> df_of(1, total);
    std::size_t a = df_of(rng);
    std::size_t b = df_of(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(compute_ief(total, a) > compute_ief(total, b));
    CHECK(compute_ief(total, 1) == std::log10(static_cast<double>(total)));
    CHECK(compute_ief(total, total) == 0.0);
  }
}

TEST_CASE("document_frequency counts events containing the pattern") {
  const Corpus corpus = three_event_corpus();
  CHECK(document_frequency(corpus, pat({"beta"})) == 3);   // in every event
  CHECK(document_frequency(corpus, pat({"alpha"})) == 2);  // e1 and e3
  CHECK(document_frequency(corpus, pat({"omega"})) == 0);
  CHECK(document_frequency(corpus, pat({"alpha", "beta"})) == 2);  // contiguous phrase
  CHECK(document_frequency(corpus, pat({"alpha", "gamma"})) == 0); // never adjacent
  CHECK(document_frequency(corpus, {}) == 0);

  // brute-force scan agrees
  std::size_t brute = 0;
  const auto pattern = pat({"alpha"});
  for (const Event& event : corpus.events()) {
    for (std::size_t i = 0; i + 1 <= event.tokens.size(); ++i) {
      if (event.tokens[i] == "alpha") {
        ++brute;
        break;
      }
    }
  }
  CHECK(document_frequency(corpus, pattern) == brute);

  CHECK(document_frequency(corpus, pat({"beta"})) <= corpus.event_count());
}

TEST_CASE("document_frequency requires a frozen corpus") {
  Corpus corpus;
  add_event(corpus, "e1", "alpha");
  CHECK_THROWS_WITH_AS(document_frequency(corpus, pat({"alpha"})), doctest::Contains("frozen"),
                       ValidationError);
}

TEST_CASE("select_context_factors ranks by ief with lexicographic ties") {
  SUBCASE("exhaustive when k equals the vocabulary") {
    const Corpus corpus = three_event_corpus();
    const CfSelection selection = select_context_factors(corpus, 3);
    REQUIRE(selection.registry.size() == 3);
    CHECK(selection.warnings.empty());
    // alpha df=2, beta df=3, gamma df=2: alpha and gamma tie, alpha first
    CHECK(selection.registry.factor(1).pattern_text() == "alpha");
    CHECK(selection.registry.factor(2).pattern_text() == "gamma");
    CHECK(selection.registry.factor(3).pattern_text() == "beta");
    CHECK(selection.registry.factor(3).ief == 0.0);
  }
  SUBCASE("tie between sa and layout resolves to layout") {
    Corpus corpus;
    add_event(corpus, "e1", "layout x");
    add_event(corpus, "e2", "sa x");
    add_event(corpus, "e3", "x");
    corpus.freeze();
    const CfSelection selection = select_context_factors(corpus, 2);
    CHECK(selection.registry.factor(1).pattern_text() == "layout");
    CHECK(selection.registry.factor(2).pattern_text() == "sa");
    CHECK(selection.registry.factor(1).ief == selection.registry.factor(2).ief);
  }
  SUBCASE("k beyond the vocabulary yields the full vocabulary plus a warning") {
    const Corpus corpus = three_event_corpus();
    const CfSelection selection = select_context_factors(corpus, 64);
    CHECK(selection.registry.size() == 3);
    REQUIRE(selection.warnings.size() == 1);
    CHECK(selection.warnings[0].find("vocabulary") != std::string::npos);
  }
  SUBCASE("k=64 on a large vocabulary selects exactly 64") {
    Corpus corpus;
    for (int e = 0; e < 10; ++e) {
      std::string text;
      for (int w = 0; w < 12; ++w) text += "tok" + std::to_string(e * 12 + w) + " ";
      add_event(corpus, "e" + std::to_string(e), text);
    }
    corpus.freeze();
    const CfSelection selection = select_context_factors(corpus, 64);
    REQUIRE(selection.registry.size() == 64);
    for (std::size_t i = 1; i < 64; ++i) {
      CHECK(selection.registry.factor(i).index == i);
      CHECK(selection.registry.factor(i).ief >= selection.registry.factor(i + 1).ief);
    }
  }
}

TEST_CASE("select_context_factors applies overrides") {
  Corpus corpus;
  add_event(corpus, "e1", "layout plan in the digital factory");
  add_event(corpus, "e2", "cost plan");
  add_event(corpus, "e3", "layout cost layout");
  add_event(corpus, "e4", "plan");
  corpus.freeze();

  SUBCASE("force-include brings in a phrase and its category") {
    const std::vector<CfOverride> overrides = {
        {pat({"digital", "factory"}), ContextCategory::Tool, true}};
    const CfSelection selection = select_context_factors(corpus, 2, overrides);
    REQUIRE(selection.registry.size() == 2);
    bool found = false;
    for (const ContextFactor& factor : selection.registry.factors()) {
      if (factor.pattern_text() == "digital factory") {
        found = true;
        CHECK(factor.category == ContextCategory::Tool);
        CHECK(factor.ief == compute_ief(4, 1));
      } else {
        CHECK(factor.category == ContextCategory::EventType);  // default
      }
    }
    CHECK(found);
  }
  SUBCASE("category-only override applies when the token is selected") {
    const std::vector<CfOverride> overrides = {{pat({"layout"}), ContextCategory::Object, false}};
    const CfSelection selection = select_context_factors(corpus, 10, overrides);
    for (const ContextFactor& factor : selection.registry.factors()) {
      if (factor.pattern_text() == "layout") CHECK(factor.category == ContextCategory::Object);
    }
  }
  SUBCASE("forcing a pattern absent from the corpus fails") {
    const std::vector<CfOverride> overrides = {{pat({"unicorn"}), ContextCategory::Tool, true}};
    CHECK_THROWS_WITH_AS(select_context_factors(corpus, 2, overrides),
                         doctest::Contains("unicorn"), ValidationError);
  }
  SUBCASE("more forced factors than k keeps them all and warns") {
    const std::vector<CfOverride> overrides = {
        {pat({"layout"}), ContextCategory::Object, true},
        {pat({"cost"}), ContextCategory::Task, true},
        {pat({"plan"}), ContextCategory::Task, true}};
    const CfSelection selection = select_context_factors(corpus, 2, overrides);
    CHECK(selection.registry.size() == 3);
    REQUIRE(!selection.warnings.empty());
    CHECK(selection.warnings[0].find("force-includes") != std::string::npos);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(select_context_factors(corpus, 0), ValidationError);
    Corpus unfrozen;
    add_event(unfrozen, "e1", "x");
    CHECK_THROWS_AS(select_context_factors(unfrozen, 1), ValidationError);
  }
}

TEST_CASE("registry validation rejects malformed factor lists") {
  CHECK_THROWS_WITH_AS(CfRegistry({{2, pat({"a"}), ContextCategory::EventType, 0.1}}),
                       doctest::Contains("1..n"), ValidationError);
  CHECK_THROWS_WITH_AS(CfRegistry({{1, pat({"a"}), ContextCategory::EventType, 0.1},
                                   {2, pat({"a"}), ContextCategory::EventType, 0.2}}),
                       doctest::Contains("duplicate"), ValidationError);
  CHECK_THROWS_AS(CfRegistry({{1, {}, ContextCategory::EventType, 0.1}}), ValidationError);
  CHECK_THROWS_AS(CfRegistry({{1, pat({"a"}), ContextCategory::EventType, -0.5}}),
                  ValidationError);
  const CfRegistry registry({{1, pat({"a"}), ContextCategory::EventType, 0.1}});
  CHECK_THROWS_AS(registry.factor(0), InvariantError);
  CHECK_THROWS_AS(registry.factor(2), InvariantError);
}

TEST_CASE("registry jsonl round-trips and reports bad lines") {
  const Corpus corpus = three_event_corpus();
  const CfRegistry registry = select_context_factors(corpus, 3).registry;

  std::stringstream stream;
  write_registry_jsonl(registry, stream);
  const CfRegistry loaded = read_registry_jsonl(stream, "<memory>");
  CHECK(loaded == registry);

  std::stringstream bad("{\"index\":1,\"pattern\":\"a\",\"category\":\"Nope\",\"ief\":0.1}\n");
  CHECK_THROWS_WITH_AS(read_registry_jsonl(bad, "reg"), doctest::Contains("reg:1:"),
                       ValidationError);
  std::stringstream noise("garbage\n");
  CHECK_THROWS_WITH_AS(read_registry_jsonl(noise, "reg"), doctest::Contains("reg:1:"),
                       ValidationError);
}

TEST_CASE("override jsonl reader defaults category and force_include") {
  std::stringstream in(
      "{\"pattern\":\"Digital Factory\",\"category\":\"Tool\",\"force_include\":true}\n"
      "{\"pattern\":\"layout\"}\n");
  const auto overrides = read_overrides_jsonl(in, "ovr");
  REQUIRE(overrides.size() == 2);
  CHECK(overrides[0].pattern == pat({"digital", "factory"}));  // normalized
  CHECK(overrides[0].category == ContextCategory::Tool);
  CHECK(overrides[0].force_include);
  CHECK(overrides[1].category == ContextCategory::EventType);
  CHECK(!overrides[1].force_include);

  std::stringstream empty_pattern("{\"pattern\":\"!!\"}\n");
  CHECK_THROWS_AS(read_overrides_jsonl(empty_pattern, "ovr"), ValidationError);
}

TEST_CASE("context categories cover the full enumeration") {
  const ContextCategory all[] = {ContextCategory::Role,      ContextCategory::Task,
                                 ContextCategory::Object,    ContextCategory::Tool,
                                 ContextCategory::Requirement, ContextCategory::Community,
                                 ContextCategory::EventType};
  for (const ContextCategory category : all) {
    CHECK(context_category_from_string(to_string(category)) == category);
  }
  CHECK_THROWS_AS(context_category_from_string("Weather"), ValidationError);
}
