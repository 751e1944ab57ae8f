#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dsc/context.hpp"
#include "dsc/corpus.hpp"
#include "dsc/relevance.hpp"
#include "dsc/vectorize.hpp"

namespace dsc {

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Standard set metrics with explicit empty-set conventions: an empty
/// prediction scores precision 1 against an empty truth set and 0 otherwise;
/// an empty truth set scores recall 1; f1 is 0 when precision + recall is 0.
PrecisionRecall precision_recall(const std::set<std::string>& predicted,
                                 const std::set<std::string>& truth);

struct RedundancyMiss {
  std::size_t redundancy = 0;  // |shared \ truth|
  std::size_t miss = 0;        // |truth \ shared|
};

RedundancyMiss redundancy_and_miss(const std::set<std::string>& shared,
                                   const std::set<std::string>& truth);

// One predicted role set held against the event's manual truth set. The
// metric fields stay empty when the event carries no truth labels.
struct SetMetrics {
  std::set<std::string> predicted;
  std::optional<PrecisionRecall> pr;
  std::optional<RedundancyMiss> rm;
};

struct RoleComparisonRow {
  std::string role_id;
  std::string role_name;
  double dsc_score = 0.0;
  RelevanceLabel dsc_label = RelevanceLabel::Low;
  int static_score = 0;
  RelevanceLabel static_label = RelevanceLabel::Low;
  bool shared = false;                // event was actually shared with this role
  std::optional<bool> manual;         // empty when the event has no truth labels
};

struct EventComparison {
  std::string event_id;
  std::string team;
  std::optional<std::string> author_role;
  std::size_t total_words = 0;
  bool has_truth = false;
  std::vector<RoleComparisonRow> rows;  // corpus role order
  SetMetrics dsc;
  SetMetrics static01;
  SetMetrics shared;
};

struct CompareThresholds {
  double tau = 0.3;
  int static_threshold = 7;
};

/// Scores one event against every role under both models and collects the
/// per-model metric blocks. `role_vectors` and `profiles` must align with
/// corpus.roles() (the order kernels::role_vectors produces).
EventComparison compare_models(const Corpus& corpus, const CfRegistry& registry,
                               const std::string& event_id,
                               std::span<const RoleVector> role_vectors,
                               std::span<const StaticInterestProfile> profiles,
                               CompareThresholds thresholds);

struct ModelAggregate {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double redundancy = 0.0;
  double miss = 0.0;
};

// Unweighted means over the events that carry truth labels.
struct AggregateMetrics {
  std::size_t events_with_truth = 0;
  ModelAggregate dsc;
  ModelAggregate static01;
  ModelAggregate shared;
};

AggregateMetrics aggregate(std::span<const EventComparison> comparisons);

// Report writers. Text is the human-readable comparison table; TSV rows are
// one line per (event, role) with '#'-prefixed metric lines appended.
void write_comparison_text(const EventComparison& comparison, std::ostream& out);
void write_aggregate_text(const AggregateMetrics& aggregate, std::ostream& out);
void write_comparison_tsv_header(std::ostream& out);
void write_comparison_tsv(const EventComparison& comparison, std::ostream& out);
void write_aggregate_tsv(const AggregateMetrics& aggregate, std::ostream& out);

}  // namespace dsc
