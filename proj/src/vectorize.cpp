#include "dsc/vectorize.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <ostream>

#include "dsc/error.hpp"

namespace dsc {
namespace {

void append_double(std::string& out, double value) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  assert(ec == std::errc{});
  out.append(buffer, end);
}

template <typename Vectors, typename IdOf, typename WeightsOf>
void write_vectors_csv(Vectors&& vectors, std::size_t dimension, std::ostream& out, IdOf id_of,
                       WeightsOf weights_of) {
  std::string line = "id";
  for (std::size_t i = 1; i <= dimension; ++i) {
    line.push_back(',');
    line += std::to_string(i);
  }
  out << line << '\n';
  for (const auto& vector : vectors) {
    const auto& weights = weights_of(vector);
    if (weights.size() != dimension) {
      throw InvariantError("vector '" + id_of(vector) + "' has dimension " +
                           std::to_string(weights.size()) + ", registry has " +
                           std::to_string(dimension));
    }
    line = id_of(vector);
    for (const double w : weights) {
      line.push_back(',');
      append_double(line, w);
    }
    out << line << '\n';
  }
}

}  // namespace

double cff(std::size_t occurrences, std::size_t total_words) {
  if (occurrences > total_words) {
    throw ValidationError("cff: " + std::to_string(occurrences) +
                          " occurrences exceed the event's " + std::to_string(total_words) +
                          " words");
  }
  if (total_words == 0) return 0.0;
  return static_cast<double>(occurrences) / static_cast<double>(total_words);
}

double event_weight(double cff_i, double ief_i) {
  assert(cff_i >= 0.0 && ief_i >= 0.0);
  return cff_i * ief_i;
}

double ref(std::size_t relevant_with_cf, std::size_t relevant_total) {
  if (relevant_with_cf > relevant_total) {
    throw ValidationError("ref: " + std::to_string(relevant_with_cf) +
                          " matching events exceed the role's " +
                          std::to_string(relevant_total) + " relevant events");
  }
  if (relevant_total == 0) return 0.0;
  return static_cast<double>(relevant_with_cf) / static_cast<double>(relevant_total);
}

double role_weight(double ref_i, double ief_i) {
  assert(ref_i >= 0.0 && ief_i >= 0.0);
  return ref_i * ief_i;
}

EventVector event_vector(const Event& event, const CfRegistry& registry) {
  EventVector out{event.id, std::vector<double>(registry.size(), 0.0)};
  for (const ContextFactor& factor : registry.factors()) {
    const std::size_t n = count_occurrences(event.tokens, factor.pattern);
    out.weights[factor.index - 1] = event_weight(cff(n, event.total_words), factor.ief);
  }
  return out;
}

RoleVector role_vector(const std::string& role_id, const Corpus& corpus,
                       const CfRegistry& registry) {
  if (!corpus.frozen()) throw ValidationError("role_vector: corpus must be frozen");
  const Role& role = corpus.role_at(role_id);
  const auto& relevant = corpus.relevant_events(role_id);
  RoleVector out{role.id, std::vector<double>(registry.size(), 0.0)};
  if (relevant.empty()) return out;  // no history, zero vector
  for (const ContextFactor& factor : registry.factors()) {
    std::size_t with_cf = 0;
    for (const auto& event_id : relevant) {
      if (contains_pattern(corpus.event_at(event_id).tokens, factor.pattern)) ++with_cf;
    }
    out.weights[factor.index - 1] = role_weight(ref(with_cf, relevant.size()), factor.ief);
  }
  return out;
}

std::vector<std::uint8_t> presence_vector(const Event& event, const CfRegistry& registry) {
  std::vector<std::uint8_t> presence(registry.size(), 0);
  for (const ContextFactor& factor : registry.factors()) {
    presence[factor.index - 1] = contains_pattern(event.tokens, factor.pattern) ? 1 : 0;
  }
  return presence;
}

void write_event_vectors_csv(std::span<const EventVector> vectors, std::size_t dimension,
                             std::ostream& out) {
  write_vectors_csv(
      vectors, dimension, out, [](const EventVector& v) { return v.event_id; },
      [](const EventVector& v) -> const std::vector<double>& { return v.weights; });
}

void write_role_vectors_csv(std::span<const RoleVector> vectors, std::size_t dimension,
                            std::ostream& out) {
  write_vectors_csv(
      vectors, dimension, out, [](const RoleVector& v) { return v.role_id; },
      [](const RoleVector& v) -> const std::vector<double>& { return v.weights; });
}

}  // namespace dsc
