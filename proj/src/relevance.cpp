#include "dsc/relevance.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "dsc/error.hpp"

namespace dsc {

std::string_view to_string(RelevanceLabel label) {
  return label == RelevanceLabel::High ? "High" : "Low";
}

std::string_view to_string(Model model) { return model == Model::Dsc ? "dsc" : "static01"; }

double cosine_relevance(std::span<const double> event_weights,
                        std::span<const double> role_weights) {
  if (event_weights.size() != role_weights.size()) {
    throw ValidationError("cosine_relevance: dimension mismatch (" +
                          std::to_string(event_weights.size()) + " vs " +
                          std::to_string(role_weights.size()) + ")");
  }
  double dot = 0.0;
  double event_norm2 = 0.0;
  double role_norm2 = 0.0;
  for (std::size_t i = 0; i < event_weights.size(); ++i) {
    dot += event_weights[i] * role_weights[i];
    event_norm2 += event_weights[i] * event_weights[i];
    role_norm2 += role_weights[i] * role_weights[i];
  }
  if (event_norm2 == 0.0 || role_norm2 == 0.0) return 0.0;
  // Weights are non-negative, so the mathematical value lies in [0, 1]; the
  // clamp only absorbs last-ulp rounding above 1.
  return std::min(1.0, dot / (std::sqrt(event_norm2) * std::sqrt(role_norm2)));
}

RelevanceLabel classify(double score, double tau) {
  assert(tau > 0.0 && tau < 1.0);
  return score >= tau ? RelevanceLabel::High : RelevanceLabel::Low;
}

RelevanceLabel classify_static01(int score, int threshold) {
  return score >= threshold ? RelevanceLabel::High : RelevanceLabel::Low;
}

StaticInterestProfile static_interest_profile(const std::string& role_id, const Corpus& corpus,
                                              const CfRegistry& registry) {
  if (!corpus.frozen()) {
    throw ValidationError("static_interest_profile: corpus must be frozen");
  }
  const Role& role = corpus.role_at(role_id);
  const auto& relevant = corpus.relevant_events(role_id);
  StaticInterestProfile profile{role.id, std::vector<std::uint8_t>(registry.size(), 0)};
  for (const ContextFactor& factor : registry.factors()) {
    for (const auto& event_id : relevant) {
      if (contains_pattern(corpus.event_at(event_id).tokens, factor.pattern)) {
        profile.interests[factor.index - 1] = 1;
        break;
      }
    }
  }
  return profile;
}

int static01_score(const StaticInterestProfile& profile,
                   std::span<const std::uint8_t> event_presence) {
  if (profile.interests.size() != event_presence.size()) {
    throw ValidationError("static01_score: dimension mismatch (" +
                          std::to_string(profile.interests.size()) + " vs " +
                          std::to_string(event_presence.size()) + ")");
  }
  int score = 0;
  for (std::size_t i = 0; i < event_presence.size(); ++i) {
    if (profile.interests[i] != 0 && event_presence[i] != 0) ++score;
  }
  return score;
}

std::set<std::string> Recommendation::high_set() const {
  std::set<std::string> out;
  for (const RankedRole& entry : ranking) {
    if (entry.label == RelevanceLabel::High) out.insert(entry.role_id);
  }
  return out;
}

namespace {

void sort_ranking(std::vector<RankedRole>& ranking) {
  std::sort(ranking.begin(), ranking.end(), [](const RankedRole& a, const RankedRole& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.role_id < b.role_id;
  });
}

}  // namespace

Recommendation recommend_dsc(const EventVector& event, std::span<const RoleVector> roles,
                             double tau) {
  Recommendation rec{event.event_id, Model::Dsc, {}};
  rec.ranking.reserve(roles.size());
  for (const RoleVector& role : roles) {
    const double score = cosine_relevance(event.weights, role.weights);
    rec.ranking.push_back({role.role_id, score, classify(score, tau)});
  }
  sort_ranking(rec.ranking);
  return rec;
}

Recommendation recommend_static01(const std::string& event_id,
                                  std::span<const std::uint8_t> event_presence,
                                  std::span<const StaticInterestProfile> profiles,
                                  int threshold) {
  Recommendation rec{event_id, Model::Static01, {}};
  rec.ranking.reserve(profiles.size());
  for (const StaticInterestProfile& profile : profiles) {
    const int score = static01_score(profile, event_presence);
    rec.ranking.push_back({profile.role_id, static_cast<double>(score),
                           classify_static01(score, threshold)});
  }
  sort_ranking(rec.ranking);
  return rec;
}

}  // namespace dsc
