#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dsc/context.hpp"
#include "dsc/corpus.hpp"
#include "dsc/vectorize.hpp"

namespace dsc::kernels {

// Batch kernels over a frozen corpus. The default entry points parallelize
// with OpenMP when compiled with it; each has a serial twin under
// kernels::reference producing bit-identical results. The test suite checks
// the pair against each other and dsc_bench compares their runtimes.

/// Document frequency of every distinct token in the corpus.
std::map<std::string, std::size_t> token_document_frequencies(const Corpus& corpus);

/// One event vector per corpus event, in corpus iteration order.
std::vector<EventVector> event_vectors(const Corpus& corpus, const CfRegistry& registry);

/// One role vector per registered role, in registration order.
std::vector<RoleVector> role_vectors(const Corpus& corpus, const CfRegistry& registry);

/// scores[e][r] = cosine relevance of event e against role r.
std::vector<std::vector<double>> score_matrix(std::span<const EventVector> events,
                                              std::span<const RoleVector> roles);

namespace reference {

std::map<std::string, std::size_t> token_document_frequencies(const Corpus& corpus);
std::vector<EventVector> event_vectors(const Corpus& corpus, const CfRegistry& registry);
std::vector<RoleVector> role_vectors(const Corpus& corpus, const CfRegistry& registry);
std::vector<std::vector<double>> score_matrix(std::span<const EventVector> events,
                                              std::span<const RoleVector> roles);

}  // namespace reference

}  // namespace dsc::kernels
