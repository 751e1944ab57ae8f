#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>

#include "dsc/corpus.hpp"

namespace dsc {

// JSON Lines readers for the three input files. Every diagnostic is prefixed
// with "<source>:<line>:". Roles must be loaded before events/links that
// reference them.
//
//   roles file:  {"id","name","team","kind","layer"}
//   events file: {"id","text","team","author_role","shared_to":[],"manual_relevant":[]}
//   links file:  {"role","events":[]}

void read_roles_jsonl(std::istream& in, const std::string& source, Corpus& corpus);
void read_roles_jsonl(const std::filesystem::path& path, Corpus& corpus);

/// When `selection` is non-null only the listed event ids are ingested; ids
/// listed but absent from the file are a validation error.
void read_events_jsonl(std::istream& in, const std::string& source, Corpus& corpus,
                       const std::set<std::string>* selection = nullptr);
void read_events_jsonl(const std::filesystem::path& path, Corpus& corpus,
                       const std::set<std::string>* selection = nullptr);

void read_links_jsonl(std::istream& in, const std::string& source, Corpus& corpus);
void read_links_jsonl(const std::filesystem::path& path, Corpus& corpus);

/// One event id per line; blank lines and lines starting with '#' ignored.
std::set<std::string> read_selection_list(std::istream& in, const std::string& source);
std::set<std::string> read_selection_list(const std::filesystem::path& path);

// Single-file corpus persistence (JSON Lines: header, roles, events, links).
// read_corpus(write_corpus(c)) == c field for field; tokens are recomputed
// from text on load.
void write_corpus(const Corpus& corpus, std::ostream& out);
Corpus read_corpus(std::istream& in, const std::string& source);

void save_corpus(const Corpus& corpus, const std::filesystem::path& destination);
Corpus load_corpus(const std::filesystem::path& source);

}  // namespace dsc
