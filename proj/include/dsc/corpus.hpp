#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dsc {

/// Deterministic tokenization: ASCII letters are lowercased, digits kept,
/// every other ASCII byte (punctuation, whitespace, hyphens) splits tokens,
/// and bytes >= 0x80 are kept verbatim so UTF-8 text passes through.
/// Empty fragments are dropped.
std::vector<std::string> normalize_tokens(std::string_view text);

/// Greedy left-to-right, non-overlapping count of `pattern` (a token or a
/// contiguous token phrase) inside `tokens`. An empty pattern matches nothing.
std::size_t count_occurrences(std::span<const std::string> tokens,
                              std::span<const std::string> pattern);

/// True when `pattern` occurs at least once as a contiguous token run.
bool contains_pattern(std::span<const std::string> tokens,
                      std::span<const std::string> pattern);

enum class RoleKind { TeamManager, SynthesisResponsible, QualityResponsible, Designer };

std::string_view to_string(RoleKind kind);
RoleKind role_kind_from_string(std::string_view text);

struct Role {
  std::string id;
  std::string name;
  std::string team;
  RoleKind kind = RoleKind::Designer;
  std::string layer;  // architectural layer tag, e.g. "L1" or "L2"

  friend bool operator==(const Role&, const Role&) = default;
};

// External event record as it arrives from an events file, before
// tokenization.
struct EventRecord {
  std::string id;
  std::string text;
  std::string team;
  std::optional<std::string> author_role;
  std::set<std::string> shared_to;
  // Ground-truth label. Distinct states: absent (no manual analysis for this
  // event) vs present-but-empty (analyzed, relevant to nobody).
  std::optional<std::set<std::string>> manual_relevant;
};

struct Event {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;
  std::size_t total_words = 0;  // always == tokens.size()
  std::string team;
  std::optional<std::string> author_role;
  std::set<std::string> shared_to;        // roles the event was actually shared with
  std::optional<std::set<std::string>> manual_relevant;

  friend bool operator==(const Event&, const Event&) = default;
};

// Role id -> ids of the events historically relevant to that role (E_r).
// Roles without links simply have no entry.
using RelevanceLinks = std::map<std::string, std::set<std::string>>;

/// Event/role store. Mutable while ingesting; freeze() makes it immutable.
/// Single writer during ingestion; after freeze every accessor is safe for
/// unrestricted concurrent reads.
class Corpus {
 public:
  void add_role(Role role);

  /// Tokenizes and stores the record. All role ids referenced by the record
  /// must already be registered.
  const std::string& ingest_event(const EventRecord& record);

  /// Adds `event_id` to the role's relevant-event set E_r. Idempotent.
  void link_role_relevance(const std::string& role_id, const std::string& event_id);

  /// Ends the ingestion phase. Idempotent; any later mutation throws.
  void freeze();

  bool frozen() const noexcept { return frozen_; }
  std::size_t event_count() const noexcept { return events_.size(); }
  const std::vector<Event>& events() const noexcept { return events_; }
  const std::vector<Role>& roles() const noexcept { return roles_; }
  const RelevanceLinks& links() const noexcept { return links_; }

  const Event* find_event(std::string_view id) const;
  const Role* find_role(std::string_view id) const;
  const Event& event_at(std::string_view id) const;  // throws ValidationError when unknown
  const Role& role_at(std::string_view id) const;    // throws ValidationError when unknown

  /// E_r for a registered role; empty set when the role has no history.
  const std::set<std::string>& relevant_events(const std::string& role_id) const;

  friend bool operator==(const Corpus& a, const Corpus& b);

 private:
  void require_mutable(std::string_view operation) const;

  std::vector<Event> events_;
  std::vector<Role> roles_;
  std::map<std::string, std::size_t, std::less<>> event_index_;
  std::map<std::string, std::size_t, std::less<>> role_index_;
  RelevanceLinks links_;
  bool frozen_ = false;
};

}  // namespace dsc
