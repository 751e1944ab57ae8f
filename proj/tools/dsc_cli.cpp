// dsc: staged relevance-routing pipeline.
//
//   ingest      events/roles/links JSONL -> frozen corpus file
//   extract-cf  corpus -> ranked context-factor registry
//   score       corpus + registry -> per-role score table for one event
//   recommend   corpus + registry -> ranked recipient list for one event
//   compare     corpus + registry -> dsc / 0-1 / sharing / manual comparison
//   vectors     corpus + registry -> event or role vectors as CSV
//
// Exit codes: 0 success, 1 validation or input error, 2 internal invariant
// violation.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsc/corpus_io.hpp"
#include "dsc/error.hpp"
#include "dsc/eval.hpp"
#include "dsc/kernels.hpp"
#include "dsc/relevance.hpp"

namespace {

using dsc::ValidationError;

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// One line per run on the diagnostics stream recording every effective
// parameter, so any output file can be reproduced from its log.
void echo_config(const std::string& command, const ConfigEcho& entries) {
  std::cerr << "config: command=" << command;
  for (const auto& [key, value] : entries) {
    std::cerr << ' ' << key << '=' << (value.empty() ? "-" : value);
  }
  std::cerr << " log_base=10\n";
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  fn(out);
  if (!out.good()) throw ValidationError("write to '" + path + "' failed");
}

void check_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ValidationError("tau must lie strictly between 0 and 1");
  }
}

void check_static_threshold(int threshold) {
  if (threshold < 0) throw ValidationError("static threshold must be >= 0");
}

dsc::Corpus load_frozen_corpus(const std::string& path) {
  dsc::Corpus corpus = dsc::load_corpus(path);
  if (!corpus.frozen()) {
    throw ValidationError("'" + path + "' holds an unfrozen corpus; produce it with dsc ingest");
  }
  return corpus;
}

struct IngestOptions {
  std::string events, roles, links, select, out;
};

int cmd_ingest(const IngestOptions& opt) {
  echo_config("ingest", {{"events", opt.events},
                         {"roles", opt.roles},
                         {"links", opt.links},
                         {"select", opt.select},
                         {"out", opt.out}});
  dsc::Corpus corpus;
  dsc::read_roles_jsonl(std::filesystem::path(opt.roles), corpus);
  if (opt.select.empty()) {
    dsc::read_events_jsonl(std::filesystem::path(opt.events), corpus);
  } else {
    const auto selection = dsc::read_selection_list(std::filesystem::path(opt.select));
    dsc::read_events_jsonl(std::filesystem::path(opt.events), corpus, &selection);
  }
  if (!opt.links.empty()) dsc::read_links_jsonl(std::filesystem::path(opt.links), corpus);
  corpus.freeze();
  dsc::save_corpus(corpus, opt.out);

  std::size_t link_pairs = 0;
  for (const auto& [role_id, event_ids] : corpus.links()) link_pairs += event_ids.size();
  std::cout << "corpus: " << corpus.event_count() << " events, " << corpus.roles().size()
            << " roles, " << corpus.links().size() << " roles with links (" << link_pairs
            << " link pairs) -> " << opt.out << '\n';
  return 0;
}

struct ExtractOptions {
  std::string corpus, overrides, out;
  std::size_t k = 64;
};

int cmd_extract_cf(const ExtractOptions& opt) {
  echo_config("extract-cf", {{"corpus", opt.corpus},
                             {"k", std::to_string(opt.k)},
                             {"overrides", opt.overrides},
                             {"out", opt.out}});
  const dsc::Corpus corpus = load_frozen_corpus(opt.corpus);
  std::vector<dsc::CfOverride> overrides;
  if (!opt.overrides.empty()) overrides = dsc::load_overrides(opt.overrides);
  const dsc::CfSelection selection = dsc::select_context_factors(corpus, opt.k, overrides);
  for (const std::string& warning : selection.warnings) {
    std::cerr << "warning: " << warning << '\n';
  }
  dsc::save_registry(selection.registry, opt.out);
  std::cout << "registry: " << selection.registry.size() << " context factors -> " << opt.out
            << '\n';
  return 0;
}

struct ScoreOptions {
  std::string corpus, registry, event_id, out;
  std::string model = "both";
  double tau = 0.3;
  int static_threshold = 7;
};

void write_score_row(std::ostream& out, const std::string& event_id,
                     const std::string& role_id, dsc::Model model, double score,
                     dsc::RelevanceLabel label) {
  char score_text[32];
  if (model == dsc::Model::Dsc) {
    std::snprintf(score_text, sizeof score_text, "%.6f", score);
  } else {
    std::snprintf(score_text, sizeof score_text, "%d", static_cast<int>(score));
  }
  out << event_id << '\t' << role_id << '\t' << to_string(model) << '\t' << score_text << '\t'
      << to_string(label) << '\t' << (label == dsc::RelevanceLabel::High ? "yes" : "no")
      << '\n';
}

int cmd_score(const ScoreOptions& opt) {
  echo_config("score", {{"corpus", opt.corpus},
                        {"registry", opt.registry},
                        {"event-id", opt.event_id},
                        {"model", opt.model},
                        {"tau", std::to_string(opt.tau)},
                        {"static-threshold", std::to_string(opt.static_threshold)},
                        {"out", opt.out}});
  check_tau(opt.tau);
  check_static_threshold(opt.static_threshold);
  const dsc::Corpus corpus = load_frozen_corpus(opt.corpus);
  const dsc::CfRegistry registry = dsc::load_registry(opt.registry);
  const dsc::Event& event = corpus.event_at(opt.event_id);
  const dsc::EventVector ev = dsc::event_vector(event, registry);
  const auto presence = dsc::presence_vector(event, registry);

  with_output(opt.out, [&](std::ostream& out) {
    out << "event_id\trole_id\tmodel\tscore\tlabel\trecommended\n";
    if (opt.model == "dsc" || opt.model == "both") {
      for (const dsc::Role& role : corpus.roles()) {
        const auto rv = dsc::role_vector(role.id, corpus, registry);
        const double score = dsc::cosine_relevance(ev.weights, rv.weights);
        write_score_row(out, event.id, role.id, dsc::Model::Dsc, score,
                        dsc::classify(score, opt.tau));
      }
    }
    if (opt.model == "static01" || opt.model == "both") {
      for (const dsc::Role& role : corpus.roles()) {
        const auto profile = dsc::static_interest_profile(role.id, corpus, registry);
        const int score = dsc::static01_score(profile, presence);
        write_score_row(out, event.id, role.id, dsc::Model::Static01, score,
                        dsc::classify_static01(score, opt.static_threshold));
      }
    }
  });
  return 0;
}

struct RecommendOptions {
  std::string corpus, registry, event_id, out;
  std::string model = "dsc";
  double tau = 0.3;
  int static_threshold = 7;
};

int cmd_recommend(const RecommendOptions& opt) {
  echo_config("recommend", {{"corpus", opt.corpus},
                            {"registry", opt.registry},
                            {"event-id", opt.event_id},
                            {"model", opt.model},
                            {"tau", std::to_string(opt.tau)},
                            {"static-threshold", std::to_string(opt.static_threshold)},
                            {"out", opt.out}});
  check_tau(opt.tau);
  check_static_threshold(opt.static_threshold);
  const dsc::Corpus corpus = load_frozen_corpus(opt.corpus);
  const dsc::CfRegistry registry = dsc::load_registry(opt.registry);
  const dsc::Event& event = corpus.event_at(opt.event_id);

  dsc::Recommendation recommendation;
  if (opt.model == "dsc") {
    const auto role_vecs = dsc::kernels::role_vectors(corpus, registry);
    recommendation = dsc::recommend_dsc(dsc::event_vector(event, registry), role_vecs, opt.tau);
  } else {
    std::vector<dsc::StaticInterestProfile> profiles;
    profiles.reserve(corpus.roles().size());
    for (const dsc::Role& role : corpus.roles()) {
      profiles.push_back(dsc::static_interest_profile(role.id, corpus, registry));
    }
    recommendation = dsc::recommend_static01(event.id, dsc::presence_vector(event, registry),
                                             profiles, opt.static_threshold);
  }

  with_output(opt.out, [&](std::ostream& out) {
    out << "event_id\trole_id\tmodel\tscore\tlabel\trecommended\n";
    for (const dsc::RankedRole& entry : recommendation.ranking) {
      write_score_row(out, recommendation.event_id, entry.role_id, recommendation.model,
                      entry.score, entry.label);
    }
  });
  return 0;
}

struct CompareOptions {
  std::string corpus, registry, event_id, out, out_tsv;
  bool all = false;
  double tau = 0.3;
  int static_threshold = 7;
};

int cmd_compare(const CompareOptions& opt) {
  echo_config("compare", {{"corpus", opt.corpus},
                          {"registry", opt.registry},
                          {"event-id", opt.event_id},
                          {"all", opt.all ? "true" : "false"},
                          {"tau", std::to_string(opt.tau)},
                          {"static-threshold", std::to_string(opt.static_threshold)},
                          {"out", opt.out},
                          {"out-tsv", opt.out_tsv}});
  check_tau(opt.tau);
  check_static_threshold(opt.static_threshold);
  if (opt.all == !opt.event_id.empty()) {
    throw ValidationError("pass exactly one of --event-id and --all");
  }
  const dsc::Corpus corpus = load_frozen_corpus(opt.corpus);
  const dsc::CfRegistry registry = dsc::load_registry(opt.registry);
  const auto role_vecs = dsc::kernels::role_vectors(corpus, registry);
  std::vector<dsc::StaticInterestProfile> profiles;
  profiles.reserve(corpus.roles().size());
  for (const dsc::Role& role : corpus.roles()) {
    profiles.push_back(dsc::static_interest_profile(role.id, corpus, registry));
  }

  const dsc::CompareThresholds thresholds{opt.tau, opt.static_threshold};
  std::vector<dsc::EventComparison> comparisons;
  if (opt.all) {
    comparisons.reserve(corpus.event_count());
    for (const dsc::Event& event : corpus.events()) {
      comparisons.push_back(
          dsc::compare_models(corpus, registry, event.id, role_vecs, profiles, thresholds));
    }
  } else {
    comparisons.push_back(
        dsc::compare_models(corpus, registry, opt.event_id, role_vecs, profiles, thresholds));
  }

  with_output(opt.out, [&](std::ostream& out) {
    bool first = true;
    for (const dsc::EventComparison& comparison : comparisons) {
      if (!first) out << '\n';
      first = false;
      dsc::write_comparison_text(comparison, out);
    }
    if (opt.all) {
      out << '\n';
      dsc::write_aggregate_text(dsc::aggregate(comparisons), out);
    }
  });
  if (!opt.out_tsv.empty()) {
    with_output(opt.out_tsv, [&](std::ostream& out) {
      dsc::write_comparison_tsv_header(out);
      for (const dsc::EventComparison& comparison : comparisons) {
        dsc::write_comparison_tsv(comparison, out);
      }
      if (opt.all) dsc::write_aggregate_tsv(dsc::aggregate(comparisons), out);
    });
  }
  return 0;
}

struct VectorsOptions {
  std::string corpus, registry, out;
  std::string kind = "events";
};

int cmd_vectors(const VectorsOptions& opt) {
  echo_config("vectors", {{"corpus", opt.corpus},
                          {"registry", opt.registry},
                          {"kind", opt.kind},
                          {"out", opt.out}});
  const dsc::Corpus corpus = load_frozen_corpus(opt.corpus);
  const dsc::CfRegistry registry = dsc::load_registry(opt.registry);
  with_output(opt.out, [&](std::ostream& out) {
    if (opt.kind == "events") {
      dsc::write_event_vectors_csv(dsc::kernels::event_vectors(corpus, registry),
                                   registry.size(), out);
    } else {
      dsc::write_role_vectors_csv(dsc::kernels::role_vectors(corpus, registry), registry.size(),
                                  out);
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic shared-context relevance routing"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file with one [section] per subcommand; "
                 "command-line flags override file values");

  IngestOptions ingest_opt;
  auto* ingest = app.add_subcommand("ingest", "validate and freeze a corpus from JSONL inputs");
  ingest->add_option("--events", ingest_opt.events, "events JSONL file")->required();
  ingest->add_option("--roles", ingest_opt.roles, "roles JSONL file")->required();
  ingest->add_option("--links", ingest_opt.links, "role-relevance links JSONL file");
  ingest->add_option("--select", ingest_opt.select, "event-id selection list (one id per line)");
  ingest->add_option("--out", ingest_opt.out, "corpus output file")->required();

  ExtractOptions extract_opt;
  auto* extract = app.add_subcommand("extract-cf", "rank tokens by ief and build the registry");
  extract->add_option("--corpus", extract_opt.corpus, "frozen corpus file")->required();
  extract->add_option("--k", extract_opt.k, "number of context factors (default 64)");
  extract->add_option("--overrides", extract_opt.overrides, "override JSONL file");
  extract->add_option("--out", extract_opt.out, "registry output file")->required();

  ScoreOptions score_opt;
  auto* score = app.add_subcommand("score", "score one event against every role");
  score->add_option("--corpus", score_opt.corpus, "frozen corpus file")->required();
  score->add_option("--registry", score_opt.registry, "registry file")->required();
  score->add_option("--event-id", score_opt.event_id, "event to score")->required();
  score->add_option("--model", score_opt.model, "dsc, static01 or both (default both)")
      ->check(CLI::IsMember({"dsc", "static01", "both"}));
  score->add_option("--tau", score_opt.tau, "dsc High/Low threshold (default 0.3)");
  score->add_option("--static-threshold", score_opt.static_threshold,
                    "0-1 model High/Low threshold (default 7)");
  score->add_option("--out", score_opt.out, "output TSV (default stdout)");

  RecommendOptions recommend_opt;
  auto* recommend = app.add_subcommand("recommend", "rank recipients for one event");
  recommend->add_option("--corpus", recommend_opt.corpus, "frozen corpus file")->required();
  recommend->add_option("--registry", recommend_opt.registry, "registry file")->required();
  recommend->add_option("--event-id", recommend_opt.event_id, "event to route")->required();
  recommend->add_option("--model", recommend_opt.model, "dsc or static01 (default dsc)")
      ->check(CLI::IsMember({"dsc", "static01"}));
  recommend->add_option("--tau", recommend_opt.tau, "dsc High/Low threshold (default 0.3)");
  recommend->add_option("--static-threshold", recommend_opt.static_threshold,
                        "0-1 model High/Low threshold (default 7)");
  recommend->add_option("--out", recommend_opt.out, "output TSV (default stdout)");

  CompareOptions compare_opt;
  auto* compare = app.add_subcommand("compare", "compare dsc, 0-1, sharing and manual labels");
  compare->add_option("--corpus", compare_opt.corpus, "frozen corpus file")->required();
  compare->add_option("--registry", compare_opt.registry, "registry file")->required();
  compare->add_option("--event-id", compare_opt.event_id, "single event to report");
  compare->add_flag("--all", compare_opt.all, "report every event plus aggregate metrics");
  compare->add_option("--tau", compare_opt.tau, "dsc High/Low threshold (default 0.3)");
  compare->add_option("--static-threshold", compare_opt.static_threshold,
                      "0-1 model High/Low threshold (default 7)");
  compare->add_option("--out", compare_opt.out, "text report file (default stdout)");
  compare->add_option("--out-tsv", compare_opt.out_tsv, "machine-readable TSV file");

  VectorsOptions vectors_opt;
  auto* vectors = app.add_subcommand("vectors", "export event or role vectors as CSV");
  vectors->add_option("--corpus", vectors_opt.corpus, "frozen corpus file")->required();
  vectors->add_option("--registry", vectors_opt.registry, "registry file")->required();
  vectors->add_option("--kind", vectors_opt.kind, "events or roles (default events)")
      ->check(CLI::IsMember({"events", "roles"}));
  vectors->add_option("--out", vectors_opt.out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_opt);
    if (*extract) return cmd_extract_cf(extract_opt);
    if (*score) return cmd_score(score_opt);
    if (*recommend) return cmd_recommend(recommend_opt);
    if (*compare) return cmd_compare(compare_opt);
    if (*vectors) return cmd_vectors(vectors_opt);
    std::cerr << "error: no command selected\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
