#include "acro/ad_corpus.hpp"

#include <algorithm>
#include <set>

#include "acro/bio.hpp"
#include "acro/text.hpp"

namespace acro {

namespace {

// Positions where the (possibly multi-word) acronym surface occurs as a
// contiguous token run.
std::vector<std::size_t> acronym_occurrences(const TokenSentence& s,
                                             const std::string& acronym,
                                             bool case_sensitive) {
  std::vector<std::string> words = split_words(acronym);
  std::vector<std::size_t> hits;
  if (words.empty() || words.size() > s.tokens.size()) return hits;
  auto equal = [&](const std::string& a, const std::string& b) {
    return case_sensitive ? a == b : to_lower(a) == to_lower(b);
  };
  for (std::size_t i = 0; i + words.size() <= s.tokens.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (!equal(s.tokens[i + k], words[k])) {
        all = false;
        break;
      }
    }
    if (all) hits.push_back(i);
  }
  return hits;
}

// True when the normalized long form appears as a contiguous token run.
bool contains_long_form(const TokenSentence& s, const std::string& long_form) {
  std::vector<std::string> words = split_words(long_form);
  if (words.empty() || words.size() > s.tokens.size()) return false;
  for (std::size_t i = 0; i + words.size() <= s.tokens.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (normalize_long_form(s.tokens[i + k]) != words[k]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

std::size_t GenerationReport::total_instances() const {
  std::size_t total = 0;
  for (const auto& [acr, n] : instances_per_acronym) total += n;
  return total;
}

AcronymDictionary build_dictionary(std::span<const TokenSentence> annotated,
                                   bool ambiguous_only) {
  AcronymDictionary dict;
  for (const auto& s : annotated) {
    if (!s.labels) continue;
    std::vector<SpanAnnotation> spans = extract_spans(s);
    pair_spans(spans);
    for (const auto& span : spans) {
      if (span.kind != SpanKind::ShortForm || !span.partner) continue;
      const SpanAnnotation& lf = spans[*span.partner];
      std::string acronym = join_words(s.tokens, span.start, span.end);
      std::string long_form = join_words(s.tokens, lf.start, lf.end);
      dict.add(acronym, long_form);
    }
  }
  return ambiguous_only ? dict.ambiguous_only() : dict;
}

std::vector<LocalDefinition> find_local_definitions(const Document& doc,
                                                    const AcronymDictionary& dict,
                                                    const SilverConfig& cfg) {
  std::vector<LocalDefinition> defs;
  for (const auto& s : doc.sentences) {
    for (const auto& [acronym, forms] : dict.entries()) {
      if (acronym_occurrences(s, acronym, cfg.case_sensitive_acronyms).empty()) {
        continue;
      }
      for (const auto& form : forms) {
        if (contains_long_form(s, form)) {
          defs.push_back({s.id, acronym, form});
        }
      }
    }
  }
  return defs;
}

std::vector<AdInstance> generate_silver_ad(std::span<const Document> corpus,
                                           const AcronymDictionary& dict,
                                           const SilverConfig& cfg,
                                           GenerationReport* report) {
  std::vector<AdInstance> instances;
  GenerationReport local_report;
  local_report.documents = corpus.size();

  for (const auto& doc : corpus) {
    std::vector<LocalDefinition> defs = find_local_definitions(doc, dict, cfg);
    local_report.local_definitions += defs.size();

    // Per acronym: the set of locally defined senses, the defining
    // sentences, and the position of the first definition.
    struct AcrDefs {
      std::set<std::string> forms;
      std::set<std::string> defining_sentences;
      std::size_t first_definition = 0;
    };
    std::map<std::string, AcrDefs> per_acronym;
    std::map<std::string, std::size_t> sentence_pos;
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      sentence_pos.emplace(doc.sentences[i].id, i);
    }
    for (const auto& def : defs) {
      auto& entry = per_acronym[def.acronym];
      std::size_t pos = sentence_pos.at(def.sentence_id);
      if (entry.forms.empty() || pos < entry.first_definition) {
        entry.first_definition = pos;
      }
      entry.forms.insert(def.long_form);
      entry.defining_sentences.insert(def.sentence_id);
    }

    for (const auto& [acronym, info] : per_acronym) {
      if (info.forms.size() > 1) {
        local_report.conflicts.push_back(
            {doc.doc_id, acronym, {info.forms.begin(), info.forms.end()}});
        continue;
      }
      const std::string& gold = *info.forms.begin();
      std::vector<std::string> candidates = dict.long_forms(acronym);
      for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
        const TokenSentence& s = doc.sentences[si];
        if (info.defining_sentences.count(s.id)) continue;
        if (!cfg.propagate_backward && si < info.first_definition) continue;
        for (std::size_t pos :
             acronym_occurrences(s, acronym, cfg.case_sensitive_acronyms)) {
          AdInstance inst;
          inst.id = doc.doc_id + ":" + s.id + ":" + std::to_string(pos);
          inst.sentence = s;
          inst.sentence.id = inst.id;
          inst.sentence.labels.reset();
          inst.acronym_index = pos;
          inst.candidates = candidates;
          inst.gold = gold;
          instances.push_back(std::move(inst));
          ++local_report.instances_per_acronym[acronym];
        }
      }
    }
  }

  if (report) *report = std::move(local_report);
  return instances;
}

}  // namespace acro
