#include "acro/identify.hpp"

#include <algorithm>
#include <limits>

#include "acro/text.hpp"

namespace acro {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool is_open_paren(const std::string& tok) { return tok == "("; }
bool is_close_paren(const std::string& tok) { return tok == ")"; }
bool is_paren(const std::string& tok) {
  return is_open_paren(tok) || is_close_paren(tok);
}

// Uppercase characters of the acronym, lowercased for case-insensitive
// comparison against window text.
std::string match_target(std::string_view acronym) {
  std::string target;
  for (char c : acronym) {
    if (is_ascii_upper(c)) target.push_back(ascii_lower(c));
  }
  return target;
}

struct WindowChar {
  char lower = 0;
  bool word_initial = false;  // token start or right after a hyphen
  std::size_t token = 0;      // index within the window
};

std::vector<WindowChar> window_chars(std::span<const std::string> window) {
  std::vector<WindowChar> chars;
  for (std::size_t t = 0; t < window.size(); ++t) {
    const std::string& tok = window[t];
    for (std::size_t i = 0; i < tok.size(); ++i) {
      WindowChar wc;
      wc.lower = ascii_lower(tok[i]);
      wc.word_initial = (i == 0) || tok[i - 1] == '-';
      wc.token = t;
      chars.push_back(wc);
    }
  }
  return chars;
}

// Tests whether every character of `target` can be placed, in order, inside
// chars[token range b..e), each at a word-initial position or immediately
// after the previous placement within the same token.
bool range_matches(const std::vector<WindowChar>& chars, std::string_view target,
                   std::size_t tok_begin, std::size_t tok_end) {
  if (target.empty()) return false;
  std::size_t lo = kNone, hi = 0;
  for (std::size_t p = 0; p < chars.size(); ++p) {
    if (chars[p].token >= tok_begin && chars[p].token < tok_end) {
      if (lo == kNone) lo = p;
      hi = p + 1;
    }
  }
  if (lo == kNone) return false;

  // reachable[p] = true when target[0..t] can end at char position p.
  std::vector<char> reachable(hi - lo, 0);
  std::size_t earliest = kNone;
  for (std::size_t p = lo; p < hi; ++p) {
    if (chars[p].word_initial && chars[p].lower == target[0]) {
      reachable[p - lo] = 1;
      if (earliest == kNone) earliest = p;
    }
  }
  if (earliest == kNone) return false;

  for (std::size_t t = 1; t < target.size(); ++t) {
    std::vector<char> next(hi - lo, 0);
    std::size_t next_earliest = kNone;
    for (std::size_t p = lo; p < hi; ++p) {
      if (chars[p].lower != target[t]) continue;
      bool ok = false;
      if (p > lo && reachable[p - 1 - lo] && chars[p - 1].token == chars[p].token) {
        ok = true;  // contiguous within the same token
      }
      if (!ok && chars[p].word_initial && earliest != kNone && earliest < p) {
        ok = true;  // jump to a later word-initial position
      }
      if (ok) {
        next[p - lo] = 1;
        if (next_earliest == kNone) next_earliest = p;
      }
    }
    if (next_earliest == kNone) return false;
    reachable = std::move(next);
    earliest = next_earliest;
  }
  return true;
}

// Consumes `target` with per-token prefix contributions: each token gives
// its first 1..max_prefix characters, and characters after each hyphen
// restart as word-initial, so "short-term" can give "s", "sh", "st",
// "sht", ... Records every exclusive end index that consumes the target
// exactly, with every used token contributing at least one character.
struct PrefixMatcher {
  const std::vector<std::string>& tokens;
  std::string_view target;
  std::size_t max_prefix;
  std::size_t skip_token;
  std::vector<std::size_t> ends;

  void from_token(std::size_t j, std::size_t pos) {
    if (pos == target.size()) {
      ends.push_back(j);
      return;
    }
    if (j >= tokens.size() || j == skip_token) return;
    from_segment(j, 0, pos);
  }

  void from_segment(std::size_t j, std::size_t seg_start, std::size_t pos) {
    const std::string& tok = tokens[j];
    std::size_t seg_end = tok.find('-', seg_start);
    if (seg_end == std::string::npos) seg_end = tok.size();
    for (std::size_t len = 1; len <= max_prefix && seg_start + len <= seg_end; ++len) {
      std::size_t idx = pos + len - 1;
      if (idx >= target.size() ||
          ascii_lower(tok[seg_start + len - 1]) != target[idx]) {
        break;
      }
      from_token(j + 1, idx + 1);  // this token's contribution ends here
      if (seg_end < tok.size()) {
        from_segment(j, seg_end + 1, idx + 1);  // continue past the hyphen
      }
    }
  }
};

}  // namespace

IdentifierConfig IdentifierConfig::baseline(bool relaxed) {
  IdentifierConfig cfg;
  cfg.uppercase_ratio_threshold = 0.6;
  cfg.strict_threshold = true;
  cfg.relaxed_mode = relaxed;
  return cfg;
}

IdentifierConfig IdentifierConfig::candidate_filter() {
  IdentifierConfig cfg;
  cfg.uppercase_ratio_threshold = 0.5;
  cfg.strict_threshold = false;
  return cfg;
}

void IdentifierConfig::validate() const {
  if (!(uppercase_ratio_threshold > 0.0 && uppercase_ratio_threshold <= 1.0)) {
    throw DataError("uppercase_ratio_threshold must be in (0,1]");
  }
  if (min_acronym_length < 1) throw DataError("min_acronym_length must be >= 1");
  if (max_longform_prefix < 1) throw DataError("max_longform_prefix must be >= 1");
}

bool is_candidate_acronym(std::string_view token, const IdentifierConfig& cfg) {
  std::size_t length = utf8_length(token);
  if (length < cfg.min_acronym_length) return false;
  std::size_t upper = 0;
  bool has_letter = false;
  for (char c : token) {
    if (is_ascii_letter(c)) has_letter = true;
    if (is_ascii_upper(c)) ++upper;
  }
  if (!has_letter) return false;
  double ratio = static_cast<double>(upper) / static_cast<double>(length);
  return cfg.strict_threshold ? ratio > cfg.uppercase_ratio_threshold
                              : ratio >= cfg.uppercase_ratio_threshold;
}

std::vector<SpanAnnotation> find_candidate_long_forms(
    const TokenSentence& s, std::span<const std::size_t> acronym_positions,
    const IdentifierConfig& cfg) {
  std::vector<SpanAnnotation> matches;
  for (std::size_t t : acronym_positions) {
    if (t >= s.tokens.size()) continue;
    std::string target = to_lower(s.tokens[t]);
    if (target.empty()) continue;
    for (std::size_t j = 0; j < s.tokens.size(); ++j) {
      if (j == t) continue;
      PrefixMatcher matcher{s.tokens, target, cfg.max_longform_prefix, t, {}};
      matcher.from_segment(j, 0, 0);
      if (matcher.ends.empty()) continue;
      std::size_t end = *std::max_element(matcher.ends.begin(), matcher.ends.end());
      SpanAnnotation span;
      span.start = j;
      span.end = end;
      span.kind = SpanKind::LongForm;
      matches.push_back(span);
    }
  }
  // Longest match per start, then greedy left-to-right non-overlap.
  std::sort(matches.begin(), matches.end(),
            [](const SpanAnnotation& a, const SpanAnnotation& b) {
              return a.start != b.start ? a.start < b.start : a.end > b.end;
            });
  std::vector<SpanAnnotation> result;
  std::size_t covered = 0;
  for (const auto& m : matches) {
    if (!result.empty() && m.start < covered) continue;
    if (!result.empty() && m == result.back()) continue;
    result.push_back(m);
    covered = m.end;
  }
  return result;
}

std::vector<TokenSentence> filter_sentences(std::span<const TokenSentence> corpus,
                                            const IdentifierConfig& cfg) {
  std::vector<TokenSentence> kept;
  for (const auto& s : corpus) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      if (is_candidate_acronym(s.tokens[i], cfg)) positions.push_back(i);
    }
    if (!positions.empty() ||
        !find_candidate_long_forms(s, positions, cfg).empty()) {
      kept.push_back(s);
    }
  }
  return kept;
}

std::optional<TokenRange> match_long_form(std::string_view acronym,
                                          std::span<const std::string> window,
                                          bool acronym_after_window) {
  std::string target = match_target(acronym);
  if (target.empty() || window.empty()) return std::nullopt;
  std::vector<WindowChar> chars = window_chars(window);

  for (std::size_t len = 1; len <= window.size(); ++len) {
    std::size_t count = window.size() - len + 1;
    for (std::size_t k = 0; k < count; ++k) {
      // Nearest range first: largest end when the acronym follows the
      // window, smallest start when it precedes it.
      std::size_t begin = acronym_after_window ? window.size() - len - k : k;
      if (range_matches(chars, target, begin, begin + len)) {
        return TokenRange{begin, begin + len};
      }
    }
  }
  return std::nullopt;
}

std::vector<SpanAnnotation> identify(const TokenSentence& s,
                                     const IdentifierConfig& cfg) {
  const auto& toks = s.tokens;
  const std::size_t n = toks.size();

  struct ParentheticalAcr {
    std::size_t idx = 0;
    bool inside = false;          // inside ( ... ), at distance <= 2 from "("
    std::size_t open_idx = kNone; // the anchoring "(" when inside
    bool before_open = false;     // immediately before "("
  };
  std::vector<ParentheticalAcr> parenthetical;
  std::vector<std::size_t> relaxed_only;

  for (std::size_t i = 0; i < n; ++i) {
    if (is_paren(toks[i]) || !is_candidate_acronym(toks[i], cfg)) continue;

    ParentheticalAcr acr;
    acr.idx = i;
    for (std::size_t back = 1; back <= 2 && back <= i; ++back) {
      if (is_open_paren(toks[i - back])) {
        acr.open_idx = i - back;
        break;
      }
    }
    if (acr.open_idx != kNone) {
      for (std::size_t k = i + 1; k < n; ++k) {
        if (is_close_paren(toks[k])) {
          acr.inside = true;
          break;
        }
      }
    }
    acr.before_open = i + 1 < n && is_open_paren(toks[i + 1]);

    if (acr.inside || acr.before_open) {
      parenthetical.push_back(acr);
    } else if (cfg.relaxed_mode) {
      relaxed_only.push_back(i);
    }
  }

  std::vector<SpanAnnotation> spans;
  std::vector<char> occupied(n, 0);
  auto take = [&](std::size_t b, std::size_t e, SpanKind kind) -> std::size_t {
    for (std::size_t t = b; t < e; ++t) {
      if (occupied[t]) return kNone;
    }
    for (std::size_t t = b; t < e; ++t) occupied[t] = 1;
    spans.push_back(SpanAnnotation{b, e, kind, std::nullopt});
    return spans.size() - 1;
  };

  // Short forms from parenthetical patterns take priority, then their long
  // forms, then relaxed additions; later spans that would overlap an
  // accepted one are dropped.
  std::vector<std::size_t> acr_span(parenthetical.size(), kNone);
  for (std::size_t a = 0; a < parenthetical.size(); ++a) {
    acr_span[a] = take(parenthetical[a].idx, parenthetical[a].idx + 1,
                       SpanKind::ShortForm);
  }

  for (std::size_t a = 0; a < parenthetical.size(); ++a) {
    const auto& acr = parenthetical[a];
    if (acr_span[a] == kNone) continue;
    const std::size_t acr_len = utf8_length(toks[acr.idx]);
    const std::size_t window_size = std::min(acr_len + 5, 2 * acr_len);

    std::optional<TokenRange> found;
    if (acr.inside) {
      // Pattern "long form ( acronym )": scan before the "(", stopping at
      // any other parenthesis.
      std::size_t lo = acr.open_idx;
      while (lo > 0 && (acr.open_idx - lo) < window_size && !is_paren(toks[lo - 1])) {
        --lo;
      }
      if (lo < acr.open_idx) {
        std::span<const std::string> window(&toks[lo], acr.open_idx - lo);
        if (auto m = match_long_form(toks[acr.idx], window, true)) {
          found = TokenRange{lo + m->begin, lo + m->end};
        }
      }
    }
    if (!found && acr.before_open) {
      // Pattern "acronym ( long form )": scan after the "(".
      std::size_t start = acr.idx + 2;
      std::size_t hi = start;
      while (hi < n && (hi - start) < window_size && !is_paren(toks[hi])) ++hi;
      if (hi > start) {
        std::span<const std::string> window(&toks[start], hi - start);
        if (auto m = match_long_form(toks[acr.idx], window, false)) {
          found = TokenRange{start + m->begin, start + m->end};
        }
      }
    }
    if (found) {
      std::size_t lf = take(found->begin, found->end, SpanKind::LongForm);
      if (lf != kNone) {
        spans[lf].partner = acr_span[a];
        spans[acr_span[a]].partner = lf;
      }
    }
  }

  for (std::size_t idx : relaxed_only) {
    take(idx, idx + 1, SpanKind::ShortForm);
  }

  // Sort by position and remap partner indices.
  std::vector<std::size_t> order(spans.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spans[a].start < spans[b].start;
  });
  std::vector<std::size_t> new_pos(spans.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_pos[order[i]] = i;
  std::vector<SpanAnnotation> sorted;
  sorted.reserve(spans.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    SpanAnnotation span = spans[order[i]];
    if (span.partner) span.partner = new_pos[*span.partner];
    sorted.push_back(span);
  }
  return sorted;
}

}  // namespace acro
