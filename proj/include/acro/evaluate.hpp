#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "acro/types.hpp"

namespace acro {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;    // gold occurrences of the class
  std::size_t predicted = 0;  // predicted occurrences
  std::size_t correct = 0;

  bool operator==(const ClassMetrics&) const = default;
};

// Macro-averaged scores plus the per-class breakdown. The report F1 is the
// harmonic mean of macro precision and macro recall (0 when both are 0),
// which is how the published baseline rows compose.
struct EvalReport {
  std::map<std::string, ClassMetrics> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double f1 = 0.0;
  std::size_t total_gold = 0;
  std::size_t total_predicted = 0;
  std::size_t total_correct = 0;

  bool operator==(const EvalReport&) const = default;
};

/// Span-level scoring of identification output. Sentences are aligned by
/// id; a predicted span is correct only when a gold span with the same
/// start, end and kind exists. Classes are "short" and "long"; macro values
/// are unweighted means over the classes occurring in gold or prediction
/// (normally both). Throws DataError on id mismatches, listing up to ten
/// offending ids.
EvalReport evaluate_ai(std::span<const TokenSentence> gold,
                       std::span<const TokenSentence> pred);

/// Classification scoring of disambiguation output, classes being the
/// normalized long forms. Macro precision averages classes with at least
/// one prediction; macro recall averages classes with at least one gold
/// instance. Every gold id needs a prediction and every prediction a gold
/// instance.
EvalReport evaluate_ad(std::span<const AdInstance> gold,
                       const std::map<std::string, std::string>& pred);

/// Brute-force re-computation of evaluate_ai by naive iteration over all
/// span pairs. Must agree with evaluate_ai exactly; kept as an independent
/// code path for cross-checking.
EvalReport oracle_evaluate_ai(std::span<const TokenSentence> gold,
                              std::span<const TokenSentence> pred);

/// Brute-force re-computation of evaluate_ad, one full pass over the
/// instances per class.
EvalReport oracle_evaluate_ad(std::span<const AdInstance> gold,
                              const std::map<std::string, std::string>& pred);

/// Plain-text table in the published column order (precision, recall, F1,
/// percentages with two decimals), one row per class plus the macro row.
std::string format_report_table(const EvalReport& report);

}  // namespace acro
