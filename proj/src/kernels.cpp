#include "dsc/kernels.hpp"

#include <algorithm>
#include <cstddef>

#include "dsc/error.hpp"
#include "dsc/relevance.hpp"

namespace dsc::kernels {
namespace {

void require_frozen(const Corpus& corpus, const char* operation) {
  if (!corpus.frozen()) {
    throw ValidationError(std::string(operation) + ": corpus must be frozen");
  }
}

using index_t = std::ptrdiff_t;

}  // namespace

std::map<std::string, std::size_t> token_document_frequencies(const Corpus& corpus) {
  require_frozen(corpus, "token_document_frequencies");
  const auto& events = corpus.events();

  // Deduplicate per event in parallel, then merge the integer counts; the
  // result is identical to the serial reference regardless of scheduling.
  std::vector<std::vector<std::string>> unique_tokens(events.size());
#pragma omp parallel for schedule(dynamic)
  for (index_t i = 0; i < static_cast<index_t>(events.size()); ++i) {
    auto tokens = events[static_cast<std::size_t>(i)].tokens;
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    unique_tokens[static_cast<std::size_t>(i)] = std::move(tokens);
  }

  std::map<std::string, std::size_t> df;
  for (auto& tokens : unique_tokens) {
    for (auto& token : tokens) ++df[std::move(token)];
  }
  return df;
}

std::vector<EventVector> event_vectors(const Corpus& corpus, const CfRegistry& registry) {
  require_frozen(corpus, "event_vectors");
  const auto& events = corpus.events();
  std::vector<EventVector> out(events.size());
#pragma omp parallel for schedule(dynamic)
  for (index_t i = 0; i < static_cast<index_t>(events.size()); ++i) {
    out[static_cast<std::size_t>(i)] =
        event_vector(events[static_cast<std::size_t>(i)], registry);
  }
  return out;
}

std::vector<RoleVector> role_vectors(const Corpus& corpus, const CfRegistry& registry) {
  require_frozen(corpus, "role_vectors");
  const auto& roles = corpus.roles();
  std::vector<RoleVector> out(roles.size());
#pragma omp parallel for schedule(dynamic)
  for (index_t i = 0; i < static_cast<index_t>(roles.size()); ++i) {
    out[static_cast<std::size_t>(i)] =
        role_vector(roles[static_cast<std::size_t>(i)].id, corpus, registry);
  }
  return out;
}

std::vector<std::vector<double>> score_matrix(std::span<const EventVector> events,
                                              std::span<const RoleVector> roles) {
  std::vector<std::vector<double>> scores(events.size());
#pragma omp parallel for schedule(dynamic)
  for (index_t i = 0; i < static_cast<index_t>(events.size()); ++i) {
    auto& row = scores[static_cast<std::size_t>(i)];
    row.resize(roles.size());
    for (std::size_t j = 0; j < roles.size(); ++j) {
      row[j] = cosine_relevance(events[static_cast<std::size_t>(i)].weights, roles[j].weights);
    }
  }
  return scores;
}

namespace reference {

std::map<std::string, std::size_t> token_document_frequencies(const Corpus& corpus) {
  require_frozen(corpus, "token_document_frequencies");
  std::map<std::string, std::size_t> df;
  std::set<std::string_view> seen;
  for (const Event& event : corpus.events()) {
    seen.clear();
    for (const auto& token : event.tokens) {
      if (seen.insert(token).second) ++df[token];
    }
  }
  return df;
}

std::vector<EventVector> event_vectors(const Corpus& corpus, const CfRegistry& registry) {
  require_frozen(corpus, "event_vectors");
  std::vector<EventVector> out;
  out.reserve(corpus.event_count());
  for (const Event& event : corpus.events()) out.push_back(event_vector(event, registry));
  return out;
}

std::vector<RoleVector> role_vectors(const Corpus& corpus, const CfRegistry& registry) {
  require_frozen(corpus, "role_vectors");
  std::vector<RoleVector> out;
  out.reserve(corpus.roles().size());
  for (const Role& role : corpus.roles()) {
    out.push_back(role_vector(role.id, corpus, registry));
  }
  return out;
}

std::vector<std::vector<double>> score_matrix(std::span<const EventVector> events,
                                              std::span<const RoleVector> roles) {
  std::vector<std::vector<double>> scores;
  scores.reserve(events.size());
  for (const EventVector& event : events) {
    std::vector<double> row;
    row.reserve(roles.size());
    for (const RoleVector& role : roles) {
      row.push_back(cosine_relevance(event.weights, role.weights));
    }
    scores.push_back(std::move(row));
  }
  return scores;
}

}  // namespace reference

}  // namespace dsc::kernels
