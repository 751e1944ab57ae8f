#include "dsc/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "dsc/error.hpp"

namespace dsc {
namespace {

std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t count = 0;
  for (const auto& item : small) {
    if (large.contains(item)) ++count;
  }
  return count;
}

std::string fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::string padded(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

std::string join(const std::set<std::string>& values, const char* separator) {
  std::string out;
  for (const auto& value : values) {
    if (!out.empty()) out += separator;
    out += value;
  }
  return out;
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

constexpr const char* kModelNames[3] = {"dsc", "static01", "shared"};

const SetMetrics* metrics_of(const EventComparison& comparison, int which) {
  switch (which) {
    case 0: return &comparison.dsc;
    case 1: return &comparison.static01;
    default: return &comparison.shared;
  }
}

}  // namespace

PrecisionRecall precision_recall(const std::set<std::string>& predicted,
                                 const std::set<std::string>& truth) {
  const std::size_t hits = intersection_size(predicted, truth);
  PrecisionRecall out;
  if (predicted.empty()) {
    out.precision = truth.empty() ? 1.0 : 0.0;
  } else {
    out.precision = static_cast<double>(hits) / static_cast<double>(predicted.size());
  }
  out.recall = truth.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(truth.size());
  const double sum = out.precision + out.recall;
  out.f1 = sum == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / sum;
  return out;
}

RedundancyMiss redundancy_and_miss(const std::set<std::string>& shared,
                                   const std::set<std::string>& truth) {
  const std::size_t hits = intersection_size(shared, truth);
  return {shared.size() - hits, truth.size() - hits};
}

EventComparison compare_models(const Corpus& corpus, const CfRegistry& registry,
                               const std::string& event_id,
                               std::span<const RoleVector> role_vectors,
                               std::span<const StaticInterestProfile> profiles,
                               CompareThresholds thresholds) {
  const Event& event = corpus.event_at(event_id);
  const auto& roles = corpus.roles();
  if (role_vectors.size() != roles.size() || profiles.size() != roles.size()) {
    throw InvariantError("compare_models: role vectors/profiles do not align with the corpus");
  }

  const EventVector ev = event_vector(event, registry);
  const auto presence = presence_vector(event, registry);

  EventComparison comparison;
  comparison.event_id = event.id;
  comparison.team = event.team;
  comparison.author_role = event.author_role;
  comparison.total_words = event.total_words;
  comparison.has_truth = event.manual_relevant.has_value();
  comparison.rows.reserve(roles.size());

  for (std::size_t i = 0; i < roles.size(); ++i) {
    RoleComparisonRow row;
    row.role_id = roles[i].id;
    row.role_name = roles[i].name;
    row.dsc_score = cosine_relevance(ev.weights, role_vectors[i].weights);
    row.dsc_label = classify(row.dsc_score, thresholds.tau);
    row.static_score = static01_score(profiles[i], presence);
    row.static_label = classify_static01(row.static_score, thresholds.static_threshold);
    row.shared = event.shared_to.contains(roles[i].id);
    if (comparison.has_truth) row.manual = event.manual_relevant->contains(roles[i].id);

    if (row.dsc_label == RelevanceLabel::High) comparison.dsc.predicted.insert(roles[i].id);
    if (row.static_label == RelevanceLabel::High) {
      comparison.static01.predicted.insert(roles[i].id);
    }
    comparison.rows.push_back(std::move(row));
  }
  comparison.shared.predicted = event.shared_to;

  if (comparison.has_truth) {
    const auto& truth = *event.manual_relevant;
    for (SetMetrics* metrics :
         {&comparison.dsc, &comparison.static01, &comparison.shared}) {
      metrics->pr = precision_recall(metrics->predicted, truth);
      metrics->rm = redundancy_and_miss(metrics->predicted, truth);
    }
  }
  return comparison;
}

AggregateMetrics aggregate(std::span<const EventComparison> comparisons) {
  AggregateMetrics out;
  ModelAggregate* totals[3] = {&out.dsc, &out.static01, &out.shared};
  for (const EventComparison& comparison : comparisons) {
    if (!comparison.has_truth) continue;
    ++out.events_with_truth;
    for (int which = 0; which < 3; ++which) {
      const SetMetrics& metrics = *metrics_of(comparison, which);
      totals[which]->precision += metrics.pr->precision;
      totals[which]->recall += metrics.pr->recall;
      totals[which]->f1 += metrics.pr->f1;
      totals[which]->redundancy += static_cast<double>(metrics.rm->redundancy);
      totals[which]->miss += static_cast<double>(metrics.rm->miss);
    }
  }
  if (out.events_with_truth > 0) {
    const auto n = static_cast<double>(out.events_with_truth);
    for (ModelAggregate* totals_entry : totals) {
      totals_entry->precision /= n;
      totals_entry->recall /= n;
      totals_entry->f1 /= n;
      totals_entry->redundancy /= n;
      totals_entry->miss /= n;
    }
  }
  return out;
}

void write_comparison_text(const EventComparison& comparison, std::ostream& out) {
  out << "event " << comparison.event_id;
  if (!comparison.team.empty()) out << "  team=" << comparison.team;
  if (comparison.author_role) out << "  author=" << *comparison.author_role;
  out << "  words=" << comparison.total_words << '\n';

  std::size_t name_width = 4;  // "role"
  for (const RoleComparisonRow& row : comparison.rows) {
    name_width = std::max(name_width, row.role_name.size());
  }
  name_width += 2;

  out << padded("role", name_width) << padded("dsc model", 15) << padded("0-1 model", 12)
      << padded("shared", 8) << "manual\n";
  for (const RoleComparisonRow& row : comparison.rows) {
    out << padded(row.role_name, name_width)
        << padded(fixed(row.dsc_score, 4) + " " + std::string(to_string(row.dsc_label)), 15)
        << padded(std::to_string(row.static_score) + " " +
                      std::string(to_string(row.static_label)),
                  12)
        << padded(yes_no(row.shared), 8)
        << (row.manual ? yes_no(*row.manual) : std::string("-")) << '\n';
  }

  if (!comparison.has_truth) {
    out << "manual analysis unavailable for this event; set metrics skipped\n";
    return;
  }
  out << padded("model", 10) << padded("recommended", 40) << padded("precision", 11)
      << padded("recall", 8) << padded("f1", 8) << padded("redundancy", 12) << "miss\n";
  for (int which = 0; which < 3; ++which) {
    const SetMetrics& metrics = *metrics_of(comparison, which);
    const std::string roles = metrics.predicted.empty() ? "-" : join(metrics.predicted, " ");
    out << padded(kModelNames[which], 10) << padded(roles, 40)
        << padded(fixed(metrics.pr->precision, 4), 11) << padded(fixed(metrics.pr->recall, 4), 8)
        << padded(fixed(metrics.pr->f1, 4), 8)
        << padded(std::to_string(metrics.rm->redundancy), 12) << metrics.rm->miss << '\n';
  }
}

void write_aggregate_text(const AggregateMetrics& aggregate, std::ostream& out) {
  out << "aggregate over " << aggregate.events_with_truth
      << " events with manual labels (unweighted means)\n";
  if (aggregate.events_with_truth == 0) return;
  const ModelAggregate* totals[3] = {&aggregate.dsc, &aggregate.static01, &aggregate.shared};
  out << padded("model", 10) << padded("precision", 11) << padded("recall", 8) << padded("f1", 8)
      << padded("redundancy", 12) << "miss\n";
  for (int which = 0; which < 3; ++which) {
    out << padded(kModelNames[which], 10) << padded(fixed(totals[which]->precision, 4), 11)
        << padded(fixed(totals[which]->recall, 4), 8) << padded(fixed(totals[which]->f1, 4), 8)
        << padded(fixed(totals[which]->redundancy, 4), 12) << fixed(totals[which]->miss, 4)
        << '\n';
  }
}

void write_comparison_tsv_header(std::ostream& out) {
  out << "event_id\trole_id\trole_name\tdsc_score\tdsc_label\tstatic01_score\tstatic01_label"
         "\tshared\tmanual\n";
}

void write_comparison_tsv(const EventComparison& comparison, std::ostream& out) {
  for (const RoleComparisonRow& row : comparison.rows) {
    out << comparison.event_id << '\t' << row.role_id << '\t' << row.role_name << '\t'
        << fixed(row.dsc_score, 6) << '\t' << to_string(row.dsc_label) << '\t'
        << row.static_score << '\t' << to_string(row.static_label) << '\t'
        << yes_no(row.shared) << '\t' << (row.manual ? yes_no(*row.manual) : std::string("na"))
        << '\n';
  }
  for (int which = 0; which < 3; ++which) {
    const SetMetrics& metrics = *metrics_of(comparison, which);
    out << "#metrics\t" << comparison.event_id << '\t' << kModelNames[which] << '\t'
        << (metrics.predicted.empty() ? "-" : join(metrics.predicted, ","));
    if (comparison.has_truth) {
      out << '\t' << fixed(metrics.pr->precision, 6) << '\t' << fixed(metrics.pr->recall, 6)
          << '\t' << fixed(metrics.pr->f1, 6) << '\t' << metrics.rm->redundancy << '\t'
          << metrics.rm->miss << '\n';
    } else {
      out << "\tunavailable\n";
    }
  }
}

void write_aggregate_tsv(const AggregateMetrics& aggregate, std::ostream& out) {
  const ModelAggregate* totals[3] = {&aggregate.dsc, &aggregate.static01, &aggregate.shared};
  for (int which = 0; which < 3; ++which) {
    out << "#aggregate\tevents_with_truth=" << aggregate.events_with_truth << '\t'
        << kModelNames[which] << '\t' << fixed(totals[which]->precision, 6) << '\t'
        << fixed(totals[which]->recall, 6) << '\t' << fixed(totals[which]->f1, 6) << '\t'
        << fixed(totals[which]->redundancy, 6) << '\t' << fixed(totals[which]->miss, 6) << '\n';
  }
}

}  // namespace dsc
