#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "acro/types.hpp"

namespace acro {

struct Prediction {
  std::string long_form;
  // Set when the decision degenerated to the tie-break: the acronym was
  // absent from the frequency table, or the context ranker had no signal
  // and fell back to frequency.
  bool low_confidence = false;
};

/// Counts (acronym, gold long form) pairs over training instances.
/// Throws DataError when an instance has no gold label.
FrequencyTable train_frequency(std::span<const AdInstance> train);

/// Argmax of the training counts over the instance's candidates, missing
/// counts counting as zero. Ties break to the lexicographically smallest
/// candidate, which makes evaluation reproducible.
Prediction predict_frequency(const AdInstance& inst, const FrequencyTable& table);

// Sparse tf-idf vectors per (acronym, long form), aggregated from the
// training sentences carrying that sense and L2-normalized. The acronym's
// own token carries no signal (it appears with every sense) and is removed
// before counting. idf uses the smoothed form ln((1+N)/(1+df)) + 1 over
// training sentences.
struct ContextProfile {
  using SparseVector = std::map<std::size_t, double>;

  std::map<std::string, std::size_t> vocabulary;  // lowercased term -> index
  std::vector<double> idf;                        // by vocabulary index
  std::map<std::string, std::map<std::string, SparseVector>> profiles;
  std::size_t num_sentences = 0;
  // (acronym, long form) senses whose training sentences produced a zero
  // vector; kept so callers can report them.
  std::vector<std::pair<std::string, std::string>> zero_vector_senses;

  bool operator==(const ContextProfile&) const = default;

  /// tf-idf vector of a sentence restricted to the known vocabulary, with
  /// tokens equal to `acronym` removed. Not normalized.
  SparseVector vectorize(const TokenSentence& s, std::string_view acronym) const;
};

ContextProfile train_context(std::span<const AdInstance> train);

/// Mixed ranker: score(c) = alpha * cosine(sentence, profile[c])
///                        + (1-alpha) * count(c)/max_count(acronym).
/// With alpha = 0 this reduces, instance by instance, to
/// predict_frequency. When the sentence vector is empty or no candidate
/// profile shares support with it, the frequency prediction is returned.
Prediction predict_context(const AdInstance& inst, const ContextProfile& profile,
                           const FrequencyTable& table, double alpha);

}  // namespace acro
