#include "dsc/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dsc/error.hpp"

namespace dsc {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string at_line(const std::string& source, std::size_t line, const std::string& message) {
  return source + ":" + std::to_string(line) + ": " + message;
}

// Calls fn(parsed object, line number) per non-blank line, turning every
// parse or validation failure into "<source>:<line>: ..." diagnostics.
template <typename Fn>
void for_each_jsonl(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json value;
    try {
      value = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError(at_line(source, lineno, e.what()));
    }
    if (!value.is_object()) {
      throw ValidationError(at_line(source, lineno, "expected a JSON object"));
    }
    try {
      fn(value, lineno);
    } catch (const ValidationError& e) {
      throw ValidationError(at_line(source, lineno, e.what()));
    } catch (const json::exception& e) {
      throw ValidationError(at_line(source, lineno, e.what()));
    }
  }
}

std::string require_string(const json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end() || !it->is_string()) {
    throw ValidationError(std::string("missing or non-string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::set<std::string> string_set(const json& array, const char* key) {
  if (!array.is_array()) {
    throw ValidationError(std::string("field '") + key + "' must be an array of strings");
  }
  std::set<std::string> out;
  for (const auto& item : array) {
    if (!item.is_string()) {
      throw ValidationError(std::string("field '") + key + "' must be an array of strings");
    }
    out.insert(item.get<std::string>());
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "' for reading");
  return in;
}

json string_array(const std::set<std::string>& values) {
  return json(std::vector<std::string>(values.begin(), values.end()));
}

}  // namespace

void read_roles_jsonl(std::istream& in, const std::string& source, Corpus& corpus) {
  for_each_jsonl(in, source, [&](const json& value, std::size_t) {
    Role role;
    role.id = require_string(value, "id");
    role.name = value.value("name", role.id);
    role.team = value.value("team", std::string{});
    role.kind = role_kind_from_string(require_string(value, "kind"));
    role.layer = value.value("layer", std::string{});
    corpus.add_role(std::move(role));
  });
}

void read_roles_jsonl(const std::filesystem::path& path, Corpus& corpus) {
  auto in = open_input(path);
  read_roles_jsonl(in, path.string(), corpus);
}

void read_events_jsonl(std::istream& in, const std::string& source, Corpus& corpus,
                       const std::set<std::string>* selection) {
  std::set<std::string> selected_seen;
  for_each_jsonl(in, source, [&](const json& value, std::size_t) {
    EventRecord record;
    record.id = require_string(value, "id");
    if (selection) {
      if (!selection->contains(record.id)) return;
      selected_seen.insert(record.id);
    }
    record.text = require_string(value, "text");
    record.team = value.value("team", std::string{});
    if (const auto it = value.find("author_role"); it != value.end() && !it->is_null()) {
      if (!it->is_string()) throw ValidationError("field 'author_role' must be a string");
      record.author_role = it->get<std::string>();
    }
    if (const auto it = value.find("shared_to"); it != value.end() && !it->is_null()) {
      record.shared_to = string_set(*it, "shared_to");
    }
    if (const auto it = value.find("manual_relevant"); it != value.end() && !it->is_null()) {
      record.manual_relevant = string_set(*it, "manual_relevant");
    }
    corpus.ingest_event(record);
  });
  if (selection && selected_seen.size() != selection->size()) {
    std::string missing;
    for (const auto& id : *selection) {
      if (!selected_seen.contains(id)) missing += missing.empty() ? id : ", " + id;
    }
    throw ValidationError(source + ": selection lists event ids absent from the file: " +
                          missing);
  }
}

void read_events_jsonl(const std::filesystem::path& path, Corpus& corpus,
                       const std::set<std::string>* selection) {
  auto in = open_input(path);
  read_events_jsonl(in, path.string(), corpus, selection);
}

void read_links_jsonl(std::istream& in, const std::string& source, Corpus& corpus) {
  for_each_jsonl(in, source, [&](const json& value, std::size_t) {
    const std::string role_id = require_string(value, "role");
    const auto it = value.find("events");
    if (it == value.end()) throw ValidationError("missing field 'events'");
    for (const auto& event_id : string_set(*it, "events")) {
      corpus.link_role_relevance(role_id, event_id);
    }
  });
}

void read_links_jsonl(const std::filesystem::path& path, Corpus& corpus) {
  auto in = open_input(path);
  read_links_jsonl(in, path.string(), corpus);
}

std::set<std::string> read_selection_list(std::istream& in, const std::string& source) {
  std::set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string id = line.substr(begin, end - begin + 1);
    if (!ids.insert(id).second) {
      throw ValidationError(at_line(source, lineno, "duplicate event id '" + id + "'"));
    }
  }
  if (ids.empty()) throw ValidationError(source + ": selection list is empty");
  return ids;
}

std::set<std::string> read_selection_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_selection_list(in, path.string());
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  ordered_json header{{"format", "dsc-corpus"},
                      {"version", 1},
                      {"frozen", corpus.frozen()},
                      {"events", corpus.event_count()},
                      {"roles", corpus.roles().size()}};
  out << header.dump() << '\n';
  for (const Role& role : corpus.roles()) {
    ordered_json value{{"kind", "role"},
                       {"id", role.id},
                       {"name", role.name},
                       {"team", role.team},
                       {"role_kind", to_string(role.kind)},
                       {"layer", role.layer}};
    out << value.dump() << '\n';
  }
  for (const Event& event : corpus.events()) {
    ordered_json value{{"kind", "event"},
                       {"id", event.id},
                       {"text", event.text},
                       {"team", event.team}};
    if (event.author_role) value["author_role"] = *event.author_role;
    value["shared_to"] = string_array(event.shared_to);
    if (event.manual_relevant) value["manual_relevant"] = string_array(*event.manual_relevant);
    out << value.dump() << '\n';
  }
  for (const auto& [role_id, event_ids] : corpus.links()) {
    if (event_ids.empty()) continue;
    ordered_json value{{"kind", "links"}, {"role", role_id}, {"events", string_array(event_ids)}};
    out << value.dump() << '\n';
  }
}

Corpus read_corpus(std::istream& in, const std::string& source) {
  Corpus corpus;
  bool saw_header = false;
  bool frozen = false;
  std::size_t expected_events = 0;
  std::size_t expected_roles = 0;
  for_each_jsonl(in, source, [&](const json& value, std::size_t) {
    if (!saw_header) {
      if (value.value("format", std::string{}) != "dsc-corpus") {
        throw ValidationError("first record must be a dsc-corpus header");
      }
      if (value.value("version", 0) != 1) {
        throw ValidationError("unsupported corpus format version");
      }
      frozen = value.value("frozen", false);
      expected_events = value.value("events", 0u);
      expected_roles = value.value("roles", 0u);
      saw_header = true;
      return;
    }
    const std::string kind = require_string(value, "kind");
    if (kind == "role") {
      Role role;
      role.id = require_string(value, "id");
      role.name = value.value("name", role.id);
      role.team = value.value("team", std::string{});
      role.kind = role_kind_from_string(require_string(value, "role_kind"));
      role.layer = value.value("layer", std::string{});
      corpus.add_role(std::move(role));
    } else if (kind == "event") {
      EventRecord record;
      record.id = require_string(value, "id");
      record.text = require_string(value, "text");
      record.team = value.value("team", std::string{});
      if (const auto it = value.find("author_role"); it != value.end() && !it->is_null()) {
        record.author_role = it->get<std::string>();
      }
      if (const auto it = value.find("shared_to"); it != value.end()) {
        record.shared_to = string_set(*it, "shared_to");
      }
      if (const auto it = value.find("manual_relevant"); it != value.end() && !it->is_null()) {
        record.manual_relevant = string_set(*it, "manual_relevant");
      }
      corpus.ingest_event(record);
    } else if (kind == "links") {
      const std::string role_id = require_string(value, "role");
      const auto it = value.find("events");
      if (it == value.end()) throw ValidationError("missing field 'events'");
      for (const auto& event_id : string_set(*it, "events")) {
        corpus.link_role_relevance(role_id, event_id);
      }
    } else {
      throw ValidationError("unknown record kind '" + kind + "'");
    }
  });
  if (!saw_header) throw ValidationError(source + ": empty corpus file (missing header)");
  if (corpus.event_count() != expected_events || corpus.roles().size() != expected_roles) {
    throw ValidationError(source + ": header counts do not match file contents (header says " +
                          std::to_string(expected_events) + " events / " +
                          std::to_string(expected_roles) + " roles, found " +
                          std::to_string(corpus.event_count()) + " / " +
                          std::to_string(corpus.roles().size()) + ")");
  }
  if (frozen) corpus.freeze();
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& destination) {
  std::ofstream out(destination);
  if (!out) throw ValidationError("cannot open '" + destination.string() + "' for writing");
  write_corpus(corpus, out);
  if (!out.good()) throw ValidationError("write to '" + destination.string() + "' failed");
}

Corpus load_corpus(const std::filesystem::path& source) {
  auto in = open_input(source);
  return read_corpus(in, source.string());
}

}  // namespace dsc
