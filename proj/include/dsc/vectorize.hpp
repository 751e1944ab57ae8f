#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dsc/context.hpp"
#include "dsc/corpus.hpp"

namespace dsc {

/// cff = occurrences / total_words. An empty event (total_words = 0) yields 0;
/// occurrences > total_words is an inconsistency and throws.
double cff(std::size_t occurrences, std::size_t total_words);

/// ew = cff * ief. Both inputs must be non-negative.
double event_weight(double cff_i, double ief_i);

/// ref = relevant_with_cf / relevant_total. A role with no history
/// (relevant_total = 0) yields 0; relevant_with_cf > relevant_total throws.
double ref(std::size_t relevant_with_cf, std::size_t relevant_total);

/// rw = ref * ief. Both inputs must be non-negative.
double role_weight(double ref_i, double ief_i);

struct EventVector {
  std::string event_id;
  std::vector<double> weights;  // ew per registry index, length = registry size

  friend bool operator==(const EventVector&, const EventVector&) = default;
};

struct RoleVector {
  std::string role_id;
  std::vector<double> weights;  // rw per registry index, length = registry size

  friend bool operator==(const RoleVector&, const RoleVector&) = default;
};

/// Event-attribute vector: entry i is event_weight(cff(n_i, W), ief_i), where
/// n_i counts the (non-overlapping) occurrences of factor i in the event.
EventVector event_vector(const Event& event, const CfRegistry& registry);

/// Role interest-degree vector: entry i is role_weight(ref_i, ief_i), where
/// ref_i is the fraction of the role's relevant events containing factor i.
/// A role with empty E_r yields the zero vector. Requires a frozen corpus.
RoleVector role_vector(const std::string& role_id, const Corpus& corpus,
                       const CfRegistry& registry);

/// Binary vector: entry i is 1 iff factor i occurs in the event.
std::vector<std::uint8_t> presence_vector(const Event& event, const CfRegistry& registry);

// CSV export: header row "id,1,2,...,n", one row per vector, weights printed
// with round-trip precision.
void write_event_vectors_csv(std::span<const EventVector> vectors,
                             std::size_t dimension, std::ostream& out);
void write_role_vectors_csv(std::span<const RoleVector> vectors,
                            std::size_t dimension, std::ostream& out);

}  // namespace dsc
