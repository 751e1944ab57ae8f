#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsc/corpus.hpp"

namespace dsc {

// The seven context categories. Categories label factors for reporting; they
// never enter the scoring math.
enum class ContextCategory { Role, Task, Object, Tool, Requirement, Community, EventType };

std::string_view to_string(ContextCategory category);
ContextCategory context_category_from_string(std::string_view text);

struct ContextFactor {
  std::size_t index = 0;             // 1-based position in the registry
  std::vector<std::string> pattern;  // one token, or a token phrase
  ContextCategory category = ContextCategory::EventType;
  double ief = 0.0;

  std::string pattern_text() const;  // tokens joined with single spaces

  friend bool operator==(const ContextFactor&, const ContextFactor&) = default;
};

/// Ordered context-factor list defining the vector basis. Indices are a
/// contiguous 1..n sequence and patterns are pairwise distinct; the
/// constructor rejects anything else.
class CfRegistry {
 public:
  CfRegistry() = default;
  explicit CfRegistry(std::vector<ContextFactor> factors);

  std::size_t size() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }
  const ContextFactor& factor(std::size_t index) const;  // 1-based
  std::span<const ContextFactor> factors() const noexcept { return factors_; }

  friend bool operator==(const CfRegistry&, const CfRegistry&) = default;

 private:
  std::vector<ContextFactor> factors_;
};

/// Number of events whose token sequence contains `pattern` at least once.
/// Requires a frozen corpus; an absent pattern yields 0.
std::size_t document_frequency(const Corpus& corpus, std::span<const std::string> pattern);

/// ief = log10(total_events / df). A factor absent from the corpus (df = 0)
/// has no defined ief and is rejected, as is df > total_events or an empty
/// corpus.
double compute_ief(std::size_t total_events, std::size_t df);

struct CfOverride {
  std::vector<std::string> pattern;
  ContextCategory category = ContextCategory::EventType;
  bool force_include = false;
};

struct CfSelection {
  CfRegistry registry;
  std::vector<std::string> warnings;
};

/// Builds the registry: candidates are all corpus tokens ranked by ief
/// descending (ties broken lexicographically by pattern text); the top k are
/// taken. Overrides may force-include extra patterns (word or phrase) and
/// assign categories; factors without an override category default to
/// EventType. Asking for more factors than the vocabulary holds yields the
/// full vocabulary plus a warning.
CfSelection select_context_factors(const Corpus& corpus, std::size_t k,
                                   std::span<const CfOverride> overrides = {});

// Registry file: JSON Lines {"index","pattern","category","ief"}.
// Override file: JSON Lines {"pattern","category","force_include"}.
void write_registry_jsonl(const CfRegistry& registry, std::ostream& out);
CfRegistry read_registry_jsonl(std::istream& in, const std::string& source);
std::vector<CfOverride> read_overrides_jsonl(std::istream& in, const std::string& source);

void save_registry(const CfRegistry& registry, const std::filesystem::path& destination);
CfRegistry load_registry(const std::filesystem::path& source);
std::vector<CfOverride> load_overrides(const std::filesystem::path& source);

}  // namespace dsc
