#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acro/types.hpp"

namespace acro {

// Thresholds and knobs for candidate detection and the rule-based
// identifier. Two presets matter:
//   candidate_filter(): ratio >= 0.5, used when filtering a raw corpus
//     ("at least half of the characters are upper-cased");
//   baseline(): ratio > 0.6, used by identify() ("more than 60%").
// The comparator is configurable because the corpus rule reads "half"
// without saying whether exactly half qualifies; the filter preset takes
// it inclusively.
struct IdentifierConfig {
  double uppercase_ratio_threshold = 0.6;
  bool strict_threshold = true;  // true: ratio > threshold; false: ratio >=
  std::size_t min_acronym_length = 2;
  std::size_t max_longform_prefix = 3;
  bool relaxed_mode = false;

  static IdentifierConfig baseline(bool relaxed = false);
  static IdentifierConfig candidate_filter();

  /// Throws DataError when a field is outside its legal range.
  void validate() const;
};

/// A [begin, end) run of token indices.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const TokenRange&) const = default;
};

/// Candidate-acronym rule: the token is long enough, contains a letter, and
/// its uppercase-letter count over its total character count clears the
/// configured threshold. The denominator counts every character (letters,
/// digits, symbols), so "E2E" scores 2/3.
bool is_candidate_acronym(std::string_view token, const IdentifierConfig& cfg);

/// Candidate-long-form rule: consecutive tokens whose leading one to
/// max_longform_prefix characters concatenate, case-insensitively, to a
/// candidate acronym occurring elsewhere in the sentence. Characters after
/// a hyphen count as word-initial, so "short-term" can contribute "st".
/// Returns non-overlapping spans (longest match per start, then greedy
/// left-to-right). Partner links are not set; candidate detection feeds
/// corpus filtering, not annotation.
std::vector<SpanAnnotation> find_candidate_long_forms(
    const TokenSentence& s, std::span<const std::size_t> acronym_positions,
    const IdentifierConfig& cfg);

/// Keeps exactly the sentences containing at least one candidate acronym or
/// candidate long form, preserving order.
std::vector<TokenSentence> filter_sentences(std::span<const TokenSentence> corpus,
                                            const IdentifierConfig& cfg);

/// Finds the long form of `acronym` in a window of tokens. Each uppercase
/// character of the acronym must be matched, in order, at a word-initial
/// position (token start or right after a hyphen) or contiguously after the
/// previous matched character within the same token. Among qualifying token
/// runs the shortest wins, ties going to the run closest to the acronym.
/// `acronym_after_window` tells which side of the window the acronym is on.
std::optional<TokenRange> match_long_form(std::string_view acronym,
                                          std::span<const std::string> window,
                                          bool acronym_after_window = true);

/// The rule-based identifier. A token with more than 60% uppercase
/// characters (per cfg) that is inside parentheses or immediately before an
/// opening parenthesis is a short form. For each such acronym the window of
/// min(|A|+5, 2|A|) tokens before the "(" (pattern "long form (acronym)") or
/// after it (pattern "acronym (long form)") is searched with
/// match_long_form; a hit becomes a partnered long-form span. In relaxed
/// mode, qualifying tokens away from parentheses are also marked as short
/// forms, without a long-form search. Returned spans never overlap and
/// never include parenthesis tokens; unbalanced parentheses disable only
/// the long-form search for the affected acronyms.
std::vector<SpanAnnotation> identify(const TokenSentence& s,
                                     const IdentifierConfig& cfg);

}  // namespace acro
