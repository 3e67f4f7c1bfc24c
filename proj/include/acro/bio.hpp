#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acro/types.hpp"

namespace acro {

/// Parses one of "B-short", "I-short", "B-long", "I-long", "O".
/// Throws ParseError on anything else.
BioLabel parse_bio_label(std::string_view s);

const std::string& format_bio_label(BioLabel label);

/// A sequence is BIO-valid when every I label continues a span of the same
/// kind, i.e. is immediately preceded by B or I of that kind.
bool is_bio_valid(std::span<const BioLabel> labels);

/// Repairs an invalid sequence in place by promoting every stray I to B
/// (CoNLL convention). Returns the number of labels changed.
std::size_t repair_bio(std::vector<BioLabel>& labels);

/// Decodes the labels of `s` into maximal B(I)* spans, sorted by start.
/// Requires labels to be present and BIO-valid.
std::vector<SpanAnnotation> extract_spans(const TokenSentence& s);

/// Encodes non-overlapping spans into a label sequence of length `n`.
/// Inverse of extract_spans. Throws DataError on overlapping or
/// out-of-range spans.
std::vector<BioLabel> spans_to_labels(std::span<const SpanAnnotation> spans,
                                      std::size_t n);

/// Fills in partner links between short- and long-form spans of one
/// sentence: each long form is paired with the nearest unpaired short form
/// (preferring the one that follows it, as in "long form ( acronym )").
/// The released identification data carries only BIO labels, so the
/// mapping has to be reconstructed; this nearest-neighbour pairing is the
/// reconstruction used for dictionary induction.
void pair_spans(std::vector<SpanAnnotation>& spans);

}  // namespace acro
