#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acro {

// Raised when an input file or record cannot be decoded. The message names
// the offending record id and field.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when well-formed input violates a semantic requirement
// (id mismatches, overlapping spans, missing gold labels, ...).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// BIO label set for acronym identification: begin/inside of a short form
// (the acronym itself), begin/inside of a long form, and outside.
enum class BioLabel : std::uint8_t {
  BShort,
  IShort,
  BLong,
  ILong,
  Outside,
};

enum class SpanKind : std::uint8_t {
  ShortForm,
  LongForm,
};

// A labeled token span [start, end) within one sentence. `partner` is the
// index, within the same span list, of the mapped span of the opposite kind
// (an acronym's long form or vice versa), when such a mapping is known.
struct SpanAnnotation {
  std::size_t start = 0;
  std::size_t end = 0;
  SpanKind kind = SpanKind::ShortForm;
  std::optional<std::size_t> partner;

  bool operator==(const SpanAnnotation&) const = default;
};

// A tokenized sentence, optionally carrying one BIO label per token.
struct TokenSentence {
  std::string id;
  std::vector<std::string> tokens;
  std::optional<std::vector<BioLabel>> labels;

  bool operator==(const TokenSentence&) const = default;
};

// An ordered group of sentences from one source document. Silver-annotation
// propagation never crosses document boundaries.
struct Document {
  std::string doc_id;
  std::vector<TokenSentence> sentences;

  bool operator==(const Document&) const = default;
};

// Map from acronym surface form to its set of normalized long forms.
// Keys are stored verbatim (lookup case sensitivity is the caller's choice);
// long forms are normalized on insertion so entries stay pairwise distinct.
class AcronymDictionary {
 public:
  using Entries = std::map<std::string, std::set<std::string>>;

  AcronymDictionary() = default;

  // Inserts (acronym, normalize_long_form(long_form)). Empty normalized
  // long forms are ignored.
  void add(std::string_view acronym, std::string_view long_form);

  bool contains(std::string_view acronym) const;

  // Long forms of `acronym`, sorted; empty when absent.
  std::vector<std::string> long_forms(std::string_view acronym) const;

  // Entries with at least two distinct long forms.
  AcronymDictionary ambiguous_only() const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entries& entries() const { return entries_; }

  // Mean number of long forms per entry; 0 for an empty dictionary.
  double mean_long_forms() const;

  bool operator==(const AcronymDictionary&) const = default;

 private:
  Entries entries_;
};

// One acronym-disambiguation problem: a sentence, the token index of the
// ambiguous acronym, the candidate long forms, and optionally the answer.
// Instances produced against a dictionary satisfy: the acronym token is a
// dictionary key, candidates == dictionary entry (>= 2 forms), and
// gold (when set) is one of the candidates. Instances loaded without a
// dictionary carry empty candidate lists and serve only for training.
struct AdInstance {
  std::string id;
  TokenSentence sentence;
  std::size_t acronym_index = 0;
  std::vector<std::string> candidates;
  std::optional<std::string> gold;

  const std::string& acronym() const { return sentence.tokens.at(acronym_index); }

  bool operator==(const AdInstance&) const = default;
};

// Occurrence counts of (acronym, long form) pairs in training data.
struct FrequencyTable {
  // acronym -> normalized long form -> count
  std::map<std::string, std::map<std::string, std::uint64_t>> counts;

  std::uint64_t count(std::string_view acronym, std::string_view long_form) const;
  bool has_acronym(std::string_view acronym) const;

  bool operator==(const FrequencyTable&) const = default;
};

}  // namespace acro
