#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsc/context.hpp"
#include "dsc/corpus.hpp"
#include "dsc/vectorize.hpp"

namespace dsc {

enum class RelevanceLabel : std::uint8_t { High, Low };

std::string_view to_string(RelevanceLabel label);

/// Cosine of the angle between the two weight vectors, clamped to [0, 1].
/// If either vector has zero norm the score is 0 by policy: a role without
/// history shares no direction with anything. Dimension mismatch throws.
double cosine_relevance(std::span<const double> event_weights,
                        std::span<const double> role_weights);

/// High iff score >= tau (inclusive boundary). tau must lie in (0, 1).
RelevanceLabel classify(double score, double tau);

/// High iff score >= threshold, the 0-1 model's integer cut.
RelevanceLabel classify_static01(int score, int threshold);

struct StaticInterestProfile {
  std::string role_id;
  std::vector<std::uint8_t> interests;  // entries are 0 or 1, length = registry size
};

/// 0-1 baseline interests: entry i is 1 iff factor i occurs in at least one
/// of the role's relevant events. Requires a frozen corpus.
StaticInterestProfile static_interest_profile(const std::string& role_id,
                                              const Corpus& corpus,
                                              const CfRegistry& registry);

/// 0-1 model score: the number of factors both present in the event and
/// marked interesting. Dimension mismatch throws.
int static01_score(const StaticInterestProfile& profile,
                   std::span<const std::uint8_t> event_presence);

enum class Model { Dsc, Static01 };

std::string_view to_string(Model model);

struct RankedRole {
  std::string role_id;
  double score = 0.0;
  RelevanceLabel label = RelevanceLabel::Low;
};

/// Every role scored and classified, sorted by score descending with ties
/// broken by role id ascending. The High subset is the recommended set.
struct Recommendation {
  std::string event_id;
  Model model = Model::Dsc;
  std::vector<RankedRole> ranking;

  std::set<std::string> high_set() const;
};

Recommendation recommend_dsc(const EventVector& event, std::span<const RoleVector> roles,
                             double tau);

Recommendation recommend_static01(const std::string& event_id,
                                  std::span<const std::uint8_t> event_presence,
                                  std::span<const StaticInterestProfile> profiles,
                                  int threshold);

}  // namespace dsc
