#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "acro/types.hpp"

namespace acro {

// Knobs for dictionary lookups and silver-annotation propagation.
// Acronym keys are matched case-sensitively by default; long forms are
// always compared after normalization. Propagation is document-wide (a
// local definition also labels earlier mentions) unless backward
// propagation is turned off.
struct SilverConfig {
  bool case_sensitive_acronyms = true;
  bool propagate_backward = true;
};

struct LocalDefinition {
  std::string sentence_id;
  std::string acronym;
  std::string long_form;  // normalized

  bool operator==(const LocalDefinition&) const = default;
};

struct DefinitionConflict {
  std::string doc_id;
  std::string acronym;
  std::vector<std::string> long_forms;  // the clashing normalized forms
};

struct GenerationReport {
  std::size_t documents = 0;
  std::size_t local_definitions = 0;
  std::map<std::string, std::size_t> instances_per_acronym;
  std::vector<DefinitionConflict> conflicts;

  std::size_t total_instances() const;
};

/// Induces the acronym dictionary from gold-annotated sentences: every
/// short-form span paired with a long-form span contributes one
/// (acronym surface, normalized long form) entry. Sentences without labels
/// and unpaired spans are skipped. When `ambiguous_only` is set (the
/// default), only entries with two or more long forms are kept, which is
/// the dictionary the disambiguation task runs against.
AcronymDictionary build_dictionary(std::span<const TokenSentence> annotated,
                                   bool ambiguous_only = true);

/// Sentences of `doc` where a dictionary acronym co-occurs with one of its
/// long forms (matched as a normalized contiguous token run).
std::vector<LocalDefinition> find_local_definitions(const Document& doc,
                                                    const AcronymDictionary& dict,
                                                    const SilverConfig& cfg = {});

/// Document-level silver annotation: for each locally defined acronym,
/// every occurrence of it in the document's other sentences becomes an
/// AdInstance labeled with the locally defined long form. Defining
/// sentences are excluded (they contain the answer); an acronym locally
/// defined with two different long forms in one document is skipped there
/// and reported as a conflict.
std::vector<AdInstance> generate_silver_ad(std::span<const Document> corpus,
                                           const AcronymDictionary& dict,
                                           const SilverConfig& cfg = {},
                                           GenerationReport* report = nullptr);

}  // namespace acro
