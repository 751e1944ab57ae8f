#include "dsc/corpus.hpp"

#include <algorithm>

#include "dsc/error.hpp"

namespace dsc {

std::vector<std::string> normalize_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char raw : text) {
    auto c = static_cast<unsigned char>(raw);
    if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
    const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80;
    if (keep) {
      current.push_back(static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::size_t count_occurrences(std::span<const std::string> tokens,
                              std::span<const std::string> pattern) {
  if (pattern.empty() || tokens.size() < pattern.size()) return 0;
  std::size_t count = 0;
  std::size_t i = 0;
  while (i + pattern.size() <= tokens.size()) {
    if (std::equal(pattern.begin(), pattern.end(), tokens.begin() + i)) {
      ++count;
      i += pattern.size();
    } else {
      ++i;
    }
  }
  return count;
}

bool contains_pattern(std::span<const std::string> tokens,
                      std::span<const std::string> pattern) {
  if (pattern.empty() || tokens.size() < pattern.size()) return false;
  for (std::size_t i = 0; i + pattern.size() <= tokens.size(); ++i) {
    if (std::equal(pattern.begin(), pattern.end(), tokens.begin() + i)) return true;
  }
  return false;
}

std::string_view to_string(RoleKind kind) {
  switch (kind) {
    case RoleKind::TeamManager: return "TeamManager";
    case RoleKind::SynthesisResponsible: return "SynthesisResponsible";
    case RoleKind::QualityResponsible: return "QualityResponsible";
    case RoleKind::Designer: return "Designer";
  }
  throw InvariantError("to_string: invalid RoleKind");
}

RoleKind role_kind_from_string(std::string_view text) {
  if (text == "TeamManager") return RoleKind::TeamManager;
  if (text == "SynthesisResponsible") return RoleKind::SynthesisResponsible;
  if (text == "QualityResponsible") return RoleKind::QualityResponsible;
  if (text == "Designer") return RoleKind::Designer;
  throw ValidationError("unknown role kind '" + std::string(text) +
                        "' (expected TeamManager, SynthesisResponsible, "
                        "QualityResponsible or Designer)");
}

void Corpus::require_mutable(std::string_view operation) const {
  if (frozen_) {
    throw ValidationError(std::string(operation) + ": corpus is frozen");
  }
}

void Corpus::add_role(Role role) {
  require_mutable("add_role");
  if (role.id.empty()) throw ValidationError("add_role: role id must be non-empty");
  if (role_index_.contains(role.id)) {
    throw ValidationError("add_role: duplicate role id '" + role.id + "'");
  }
  roles_.push_back(std::move(role));
  role_index_.emplace(roles_.back().id, roles_.size() - 1);
}

const std::string& Corpus::ingest_event(const EventRecord& record) {
  require_mutable("ingest_event");
  if (record.id.empty()) throw ValidationError("ingest_event: event id must be non-empty");
  if (event_index_.contains(record.id)) {
    throw ValidationError("ingest_event: duplicate event id '" + record.id + "'");
  }
  const auto check_role = [&](const std::string& role_id, const char* field) {
    if (!role_index_.contains(role_id)) {
      throw ValidationError("event '" + record.id + "': unknown role '" + role_id +
                            "' in " + field);
    }
  };
  if (record.author_role) check_role(*record.author_role, "author_role");
  for (const auto& role_id : record.shared_to) check_role(role_id, "shared_to");
  if (record.manual_relevant) {
    for (const auto& role_id : *record.manual_relevant) check_role(role_id, "manual_relevant");
  }

  Event event;
  event.id = record.id;
  event.text = record.text;
  event.tokens = normalize_tokens(record.text);
  event.total_words = event.tokens.size();
  event.team = record.team;
  event.author_role = record.author_role;
  event.shared_to = record.shared_to;
  event.manual_relevant = record.manual_relevant;

  events_.push_back(std::move(event));
  event_index_.emplace(events_.back().id, events_.size() - 1);
  return events_.back().id;
}

void Corpus::link_role_relevance(const std::string& role_id, const std::string& event_id) {
  require_mutable("link_role_relevance");
  if (!role_index_.contains(role_id)) {
    throw ValidationError("link_role_relevance: unknown role '" + role_id + "'");
  }
  if (!event_index_.contains(event_id)) {
    throw ValidationError("link_role_relevance: unknown event '" + event_id + "'");
  }
  links_[role_id].insert(event_id);
}

void Corpus::freeze() { frozen_ = true; }

const Event* Corpus::find_event(std::string_view id) const {
  const auto it = event_index_.find(id);
  return it == event_index_.end() ? nullptr : &events_[it->second];
}

const Role* Corpus::find_role(std::string_view id) const {
  const auto it = role_index_.find(id);
  return it == role_index_.end() ? nullptr : &roles_[it->second];
}

const Event& Corpus::event_at(std::string_view id) const {
  const Event* event = find_event(id);
  if (!event) throw ValidationError("unknown event '" + std::string(id) + "'");
  return *event;
}

const Role& Corpus::role_at(std::string_view id) const {
  const Role* role = find_role(id);
  if (!role) throw ValidationError("unknown role '" + std::string(id) + "'");
  return *role;
}

const std::set<std::string>& Corpus::relevant_events(const std::string& role_id) const {
  role_at(role_id);  // unknown role is an error, a role without links is not
  static const std::set<std::string> empty;
  const auto it = links_.find(role_id);
  return it == links_.end() ? empty : it->second;
}

bool operator==(const Corpus& a, const Corpus& b) {
  return a.frozen_ == b.frozen_ && a.events_ == b.events_ && a.roles_ == b.roles_ &&
         a.links_ == b.links_;
}

}  // namespace dsc
