#include "acro/bio.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace acro {

namespace {

const std::array<std::string, 5> kLabelNames = {
    "B-short", "I-short", "B-long", "I-long", "O"};

bool is_inside(BioLabel l) {
  return l == BioLabel::IShort || l == BioLabel::ILong;
}

BioLabel begin_of(BioLabel inside) {
  return inside == BioLabel::IShort ? BioLabel::BShort : BioLabel::BLong;
}

SpanKind kind_of(BioLabel l) {
  return (l == BioLabel::BShort || l == BioLabel::IShort) ? SpanKind::ShortForm
                                                          : SpanKind::LongForm;
}

// An I label is stray unless the previous label is B or I of the same kind.
bool continues(BioLabel prev, BioLabel inside) {
  if (prev == BioLabel::Outside) return false;
  return kind_of(prev) == kind_of(inside);
}

}  // namespace

BioLabel parse_bio_label(std::string_view s) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (s == kLabelNames[i]) return static_cast<BioLabel>(i);
  }
  throw ParseError("unknown BIO label '" + std::string(s) + "'");
}

const std::string& format_bio_label(BioLabel label) {
  return kLabelNames[static_cast<std::size_t>(label)];
}

bool is_bio_valid(std::span<const BioLabel> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (is_inside(labels[i]) && (i == 0 || !continues(labels[i - 1], labels[i]))) {
      return false;
    }
  }
  return true;
}

std::size_t repair_bio(std::vector<BioLabel>& labels) {
  std::size_t repaired = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (is_inside(labels[i]) && (i == 0 || !continues(labels[i - 1], labels[i]))) {
      labels[i] = begin_of(labels[i]);
      ++repaired;
    }
  }
  return repaired;
}

std::vector<SpanAnnotation> extract_spans(const TokenSentence& s) {
  if (!s.labels) {
    throw DataError("sentence '" + s.id + "': no labels to extract spans from");
  }
  const auto& labels = *s.labels;
  if (!is_bio_valid(labels)) {
    throw DataError("sentence '" + s.id + "': BIO-invalid label sequence");
  }
  std::vector<SpanAnnotation> spans;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == BioLabel::BShort || labels[i] == BioLabel::BLong) {
      SpanAnnotation span;
      span.start = i;
      span.kind = kind_of(labels[i]);
      std::size_t j = i + 1;
      while (j < labels.size() && is_inside(labels[j]) &&
             kind_of(labels[j]) == span.kind) {
        ++j;
      }
      span.end = j;
      spans.push_back(span);
      i = j - 1;
    }
  }
  return spans;
}

std::vector<BioLabel> spans_to_labels(std::span<const SpanAnnotation> spans,
                                      std::size_t n) {
  std::vector<BioLabel> labels(n, BioLabel::Outside);
  std::vector<SpanAnnotation> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const SpanAnnotation& a, const SpanAnnotation& b) {
              return a.start < b.start;
            });
  std::size_t prev_end = 0;
  bool first = true;
  for (const auto& span : sorted) {
    if (span.start >= span.end || span.end > n) {
      throw DataError("span [" + std::to_string(span.start) + "," +
                      std::to_string(span.end) + ") out of range for " +
                      std::to_string(n) + " tokens");
    }
    if (!first && span.start < prev_end) {
      throw DataError("overlapping spans at token " + std::to_string(span.start));
    }
    first = false;
    prev_end = span.end;
    labels[span.start] =
        span.kind == SpanKind::ShortForm ? BioLabel::BShort : BioLabel::BLong;
    for (std::size_t i = span.start + 1; i < span.end; ++i) {
      labels[i] =
          span.kind == SpanKind::ShortForm ? BioLabel::IShort : BioLabel::ILong;
    }
  }
  return labels;
}

void pair_spans(std::vector<SpanAnnotation>& spans) {
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

  // Gap in tokens between two non-overlapping spans.
  auto gap = [](const SpanAnnotation& a, const SpanAnnotation& b) {
    return a.end <= b.start ? b.start - a.end : a.start - b.end;
  };

  for (std::size_t li = 0; li < spans.size(); ++li) {
    if (spans[li].kind != SpanKind::LongForm || spans[li].partner) continue;
    std::size_t best = kUnset;
    std::size_t best_gap = kUnset;
    bool best_follows = false;
    for (std::size_t si = 0; si < spans.size(); ++si) {
      if (spans[si].kind != SpanKind::ShortForm || spans[si].partner) continue;
      std::size_t g = gap(spans[li], spans[si]);
      bool follows = spans[si].start >= spans[li].end;
      if (best == kUnset || g < best_gap || (g == best_gap && follows && !best_follows)) {
        best = si;
        best_gap = g;
        best_follows = follows;
      }
    }
    if (best != kUnset) {
      spans[li].partner = best;
      spans[best].partner = li;
    }
  }
}

}  // namespace acro
