#include "dsc/context.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "dsc/error.hpp"
#include "dsc/kernels.hpp"

namespace dsc {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

}  // namespace

std::string_view to_string(ContextCategory category) {
  switch (category) {
    case ContextCategory::Role: return "Role";
    case ContextCategory::Task: return "Task";
    case ContextCategory::Object: return "Object";
    case ContextCategory::Tool: return "Tool";
    case ContextCategory::Requirement: return "Requirement";
    case ContextCategory::Community: return "Community";
    case ContextCategory::EventType: return "EventType";
  }
  throw InvariantError("to_string: invalid ContextCategory");
}

ContextCategory context_category_from_string(std::string_view text) {
  if (text == "Role") return ContextCategory::Role;
  if (text == "Task") return ContextCategory::Task;
  if (text == "Object") return ContextCategory::Object;
  if (text == "Tool") return ContextCategory::Tool;
  if (text == "Requirement") return ContextCategory::Requirement;
  if (text == "Community") return ContextCategory::Community;
  if (text == "EventType") return ContextCategory::EventType;
  throw ValidationError("unknown context category '" + std::string(text) + "'");
}

std::string ContextFactor::pattern_text() const { return join_tokens(pattern); }

CfRegistry::CfRegistry(std::vector<ContextFactor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const ContextFactor& factor = factors_[i];
    if (factor.index != i + 1) {
      throw ValidationError("registry indices must run 1..n in order; position " +
                            std::to_string(i + 1) + " holds index " +
                            std::to_string(factor.index));
    }
    if (factor.pattern.empty()) {
      throw ValidationError("context factor " + std::to_string(factor.index) +
                            " has an empty pattern");
    }
    for (const auto& token : factor.pattern) {
      if (token.empty()) {
        throw ValidationError("context factor " + std::to_string(factor.index) +
                              " has an empty token in its pattern");
      }
    }
    if (!std::isfinite(factor.ief) || factor.ief < 0.0) {
      throw ValidationError("context factor " + std::to_string(factor.index) +
                            " has an invalid ief");
    }
    if (!seen.insert(factor.pattern_text()).second) {
      throw ValidationError("duplicate context factor pattern '" + factor.pattern_text() + "'");
    }
  }
}

const ContextFactor& CfRegistry::factor(std::size_t index) const {
  if (index == 0 || index > factors_.size()) {
    throw InvariantError("registry index " + std::to_string(index) + " out of range 1.." +
                         std::to_string(factors_.size()));
  }
  return factors_[index - 1];
}

std::size_t document_frequency(const Corpus& corpus, std::span<const std::string> pattern) {
  if (!corpus.frozen()) throw ValidationError("document_frequency: corpus must be frozen");
  if (pattern.empty()) return 0;
  std::size_t count = 0;
  for (const Event& event : corpus.events()) {
    if (contains_pattern(event.tokens, pattern)) ++count;
  }
  return count;
}

double compute_ief(std::size_t total_events, std::size_t df) {
  if (total_events == 0) throw ValidationError("compute_ief: corpus has no events");
  if (df == 0) {
    throw ValidationError(
        "compute_ief: factor absent from the corpus (df = 0) has no defined ief");
  }
  if (df > total_events) {
    throw ValidationError("compute_ief: df " + std::to_string(df) + " exceeds corpus size " +
                          std::to_string(total_events));
  }
  return std::log10(static_cast<double>(total_events) / static_cast<double>(df));
}

CfSelection select_context_factors(const Corpus& corpus, std::size_t k,
                                   std::span<const CfOverride> overrides) {
  if (!corpus.frozen()) throw ValidationError("select_context_factors: corpus must be frozen");
  if (corpus.event_count() == 0) {
    throw ValidationError("select_context_factors: corpus has no events");
  }
  if (k == 0) throw ValidationError("select_context_factors: k must be >= 1");

  struct Candidate {
    std::vector<std::string> pattern;
    std::string text;
    double ief;
  };
  const auto ranks_before = [](const Candidate& a, const Candidate& b) {
    if (a.ief != b.ief) return a.ief > b.ief;
    return a.text < b.text;
  };

  const std::size_t total = corpus.event_count();
  std::vector<std::string> warnings;

  // Overrides: category assignments apply to whatever gets selected;
  // force_include additionally guarantees membership.
  std::map<std::string, ContextCategory> category_of;
  std::vector<Candidate> selected;
  std::set<std::string> taken;
  for (const CfOverride& override_entry : overrides) {
    if (override_entry.pattern.empty()) {
      throw ValidationError("override with an empty pattern");
    }
    const std::string text = join_tokens(override_entry.pattern);
    category_of[text] = override_entry.category;
    if (!override_entry.force_include || taken.contains(text)) continue;
    const std::size_t df = document_frequency(corpus, override_entry.pattern);
    if (df == 0) {
      throw ValidationError("override pattern '" + text +
                            "' does not occur in the corpus, so its ief is undefined");
    }
    selected.push_back({override_entry.pattern, text, compute_ief(total, df)});
    taken.insert(text);
  }

  std::vector<Candidate> candidates;
  for (const auto& [token, df] : kernels::token_document_frequencies(corpus)) {
    if (taken.contains(token)) continue;
    candidates.push_back({{token}, token, compute_ief(total, df)});
  }
  std::sort(candidates.begin(), candidates.end(), ranks_before);

  if (selected.size() > k) {
    warnings.push_back("override file force-includes " + std::to_string(selected.size()) +
                       " factors, more than k=" + std::to_string(k) +
                       "; the registry grows to hold them all");
  }
  if (k > selected.size() + candidates.size()) {
    warnings.push_back("k=" + std::to_string(k) + " exceeds the available vocabulary (" +
                       std::to_string(selected.size() + candidates.size()) +
                       " patterns); selecting the full vocabulary");
  }
  for (Candidate& candidate : candidates) {
    if (selected.size() >= k) break;
    selected.push_back(std::move(candidate));
  }
  std::sort(selected.begin(), selected.end(), ranks_before);

  std::vector<ContextFactor> factors;
  factors.reserve(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const auto it = category_of.find(selected[i].text);
    factors.push_back({i + 1, std::move(selected[i].pattern),
                       it == category_of.end() ? ContextCategory::EventType : it->second,
                       selected[i].ief});
  }
  return {CfRegistry(std::move(factors)), std::move(warnings)};
}

void write_registry_jsonl(const CfRegistry& registry, std::ostream& out) {
  for (const ContextFactor& factor : registry.factors()) {
    ordered_json value{{"index", factor.index},
                       {"pattern", factor.pattern_text()},
                       {"category", to_string(factor.category)},
                       {"ief", factor.ief}};
    out << value.dump() << '\n';
  }
}

CfRegistry read_registry_jsonl(std::istream& in, const std::string& source) {
  std::vector<ContextFactor> factors;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    json value;
    try {
      value = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError(where + e.what());
    }
    try {
      ContextFactor factor;
      factor.index = value.at("index").get<std::size_t>();
      factor.pattern = normalize_tokens(value.at("pattern").get<std::string>());
      factor.category = context_category_from_string(value.at("category").get<std::string>());
      factor.ief = value.at("ief").get<double>();
      factors.push_back(std::move(factor));
    } catch (const json::exception& e) {
      throw ValidationError(where + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  try {
    return CfRegistry(std::move(factors));
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

std::vector<CfOverride> read_overrides_jsonl(std::istream& in, const std::string& source) {
  std::vector<CfOverride> overrides;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    json value;
    try {
      value = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError(where + e.what());
    }
    try {
      CfOverride override_entry;
      override_entry.pattern = normalize_tokens(value.at("pattern").get<std::string>());
      if (override_entry.pattern.empty()) {
        throw ValidationError("pattern normalizes to nothing");
      }
      if (const auto it = value.find("category"); it != value.end()) {
        override_entry.category = context_category_from_string(it->get<std::string>());
      }
      override_entry.force_include = value.value("force_include", false);
      overrides.push_back(std::move(override_entry));
    } catch (const json::exception& e) {
      throw ValidationError(where + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  return overrides;
}

void save_registry(const CfRegistry& registry, const std::filesystem::path& destination) {
  std::ofstream out(destination);
  if (!out) throw ValidationError("cannot open '" + destination.string() + "' for writing");
  write_registry_jsonl(registry, out);
  if (!out.good()) throw ValidationError("write to '" + destination.string() + "' failed");
}

CfRegistry load_registry(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw ValidationError("cannot open '" + source.string() + "' for reading");
  return read_registry_jsonl(in, source.string());
}

std::vector<CfOverride> load_overrides(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw ValidationError("cannot open '" + source.string() + "' for reading");
  return read_overrides_jsonl(in, source.string());
}

}  // namespace dsc
