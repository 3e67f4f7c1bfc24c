#include "acro/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "acro/bio.hpp"
#include "acro/text.hpp"

namespace acro {

namespace {

const std::string kShortClass = "short";
const std::string kLongClass = "long";

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) {
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

std::string list_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 10; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > 10) out += ", ...";
  return out;
}

// Pairs gold and prediction sentences by id, demanding a bijection.
std::vector<std::pair<const TokenSentence*, const TokenSentence*>> align_by_id(
    std::span<const TokenSentence> gold, std::span<const TokenSentence> pred) {
  std::map<std::string, const TokenSentence*> pred_by_id;
  for (const auto& s : pred) {
    if (!pred_by_id.emplace(s.id, &s).second) {
      throw DataError("duplicate prediction id '" + s.id + "'");
    }
  }
  std::vector<std::pair<const TokenSentence*, const TokenSentence*>> pairs;
  std::vector<std::string> missing;
  std::set<std::string> gold_ids;
  for (const auto& s : gold) {
    if (!gold_ids.insert(s.id).second) {
      throw DataError("duplicate gold id '" + s.id + "'");
    }
    auto it = pred_by_id.find(s.id);
    if (it == pred_by_id.end()) {
      missing.push_back(s.id);
    } else {
      pairs.emplace_back(&s, it->second);
    }
  }
  if (!missing.empty()) {
    throw DataError("missing predictions for " + std::to_string(missing.size()) +
                    " sentence id(s): " + list_ids(missing));
  }
  std::vector<std::string> unknown;
  for (const auto& s : pred) {
    if (!gold_ids.count(s.id)) unknown.push_back(s.id);
  }
  if (!unknown.empty()) {
    throw DataError("predictions for " + std::to_string(unknown.size()) +
                    " unknown sentence id(s): " + list_ids(unknown));
  }
  return pairs;
}

struct Tally {
  std::size_t support = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;
};

// Shared finishing step for the AI reports (macro over classes occurring
// anywhere). Iteration over std::map keeps the summation order fixed so the
// oracle reproduces the arithmetic bit for bit.
EvalReport finish_ai(const std::map<std::string, Tally>& tallies) {
  EvalReport report;
  double sum_p = 0.0, sum_r = 0.0;
  std::size_t classes = 0;
  for (const auto& [name, tally] : tallies) {
    if (tally.support == 0 && tally.predicted == 0) continue;
    ClassMetrics m;
    m.support = tally.support;
    m.predicted = tally.predicted;
    m.correct = tally.correct;
    m.precision = ratio(tally.correct, tally.predicted);
    m.recall = ratio(tally.correct, tally.support);
    m.f1 = harmonic(m.precision, m.recall);
    report.per_class.emplace(name, m);
    sum_p += m.precision;
    sum_r += m.recall;
    ++classes;
    report.total_gold += tally.support;
    report.total_predicted += tally.predicted;
    report.total_correct += tally.correct;
  }
  if (classes > 0) {
    report.macro_precision = sum_p / static_cast<double>(classes);
    report.macro_recall = sum_r / static_cast<double>(classes);
  }
  report.f1 = harmonic(report.macro_precision, report.macro_recall);
  return report;
}

// Finishing step for the AD reports: macro precision over predicted
// classes, macro recall over gold classes.
EvalReport finish_ad(const std::map<std::string, Tally>& tallies) {
  EvalReport report;
  double sum_p = 0.0, sum_r = 0.0;
  std::size_t p_classes = 0, r_classes = 0;
  for (const auto& [name, tally] : tallies) {
    ClassMetrics m;
    m.support = tally.support;
    m.predicted = tally.predicted;
    m.correct = tally.correct;
    m.precision = ratio(tally.correct, tally.predicted);
    m.recall = ratio(tally.correct, tally.support);
    m.f1 = harmonic(m.precision, m.recall);
    report.per_class.emplace(name, m);
    if (tally.predicted > 0) {
      sum_p += m.precision;
      ++p_classes;
    }
    if (tally.support > 0) {
      sum_r += m.recall;
      ++r_classes;
    }
    report.total_gold += tally.support;
    report.total_predicted += tally.predicted;
    report.total_correct += tally.correct;
  }
  if (p_classes > 0) report.macro_precision = sum_p / static_cast<double>(p_classes);
  if (r_classes > 0) report.macro_recall = sum_r / static_cast<double>(r_classes);
  report.f1 = harmonic(report.macro_precision, report.macro_recall);
  return report;
}

const std::string& class_name(SpanKind kind) {
  return kind == SpanKind::ShortForm ? kShortClass : kLongClass;
}

void check_ad_inputs(std::span<const AdInstance> gold,
                     const std::map<std::string, std::string>& pred) {
  std::set<std::string> gold_ids;
  std::vector<std::string> missing;
  for (const auto& inst : gold) {
    if (!gold_ids.insert(inst.id).second) {
      throw DataError("duplicate gold instance id '" + inst.id + "'");
    }
    if (!inst.gold) {
      throw DataError("instance '" + inst.id + "': missing gold long form");
    }
    if (!pred.count(inst.id)) missing.push_back(inst.id);
  }
  if (!missing.empty()) {
    throw DataError("missing predictions for " + std::to_string(missing.size()) +
                    " instance id(s): " + list_ids(missing));
  }
  std::vector<std::string> unknown;
  for (const auto& [id, _] : pred) {
    if (!gold_ids.count(id)) unknown.push_back(id);
  }
  if (!unknown.empty()) {
    throw DataError("predictions for " + std::to_string(unknown.size()) +
                    " unknown instance id(s): " + list_ids(unknown));
  }
}

}  // namespace

EvalReport evaluate_ai(std::span<const TokenSentence> gold,
                       std::span<const TokenSentence> pred) {
  auto pairs = align_by_id(gold, pred);
  std::map<std::string, Tally> tallies;
  tallies[kShortClass];
  tallies[kLongClass];
  for (const auto& [g, p] : pairs) {
    std::vector<SpanAnnotation> gold_spans = extract_spans(*g);
    std::vector<SpanAnnotation> pred_spans = extract_spans(*p);
    for (const auto& gs : gold_spans) ++tallies[class_name(gs.kind)].support;
    for (const auto& ps : pred_spans) {
      Tally& tally = tallies[class_name(ps.kind)];
      ++tally.predicted;
      for (const auto& gs : gold_spans) {
        if (gs.start == ps.start && gs.end == ps.end && gs.kind == ps.kind) {
          ++tally.correct;
          break;
        }
      }
    }
  }
  return finish_ai(tallies);
}

EvalReport evaluate_ad(std::span<const AdInstance> gold,
                       const std::map<std::string, std::string>& pred) {
  check_ad_inputs(gold, pred);
  std::map<std::string, Tally> tallies;
  for (const auto& inst : gold) {
    std::string gold_form = normalize_long_form(*inst.gold);
    std::string pred_form = normalize_long_form(pred.at(inst.id));
    ++tallies[gold_form].support;
    ++tallies[pred_form].predicted;
    if (gold_form == pred_form) ++tallies[gold_form].correct;
  }
  return finish_ad(tallies);
}

EvalReport oracle_evaluate_ai(std::span<const TokenSentence> gold,
                              std::span<const TokenSentence> pred) {
  auto pairs = align_by_id(gold, pred);

  // Independent span decoding: walk the labels directly.
  auto decode = [](const TokenSentence& s) {
    std::vector<SpanAnnotation> spans;
    const auto& labels = s.labels.value();
    std::size_t i = 0;
    while (i < labels.size()) {
      BioLabel l = labels[i];
      if (l == BioLabel::BShort || l == BioLabel::BLong) {
        SpanKind kind =
            l == BioLabel::BShort ? SpanKind::ShortForm : SpanKind::LongForm;
        BioLabel inside = l == BioLabel::BShort ? BioLabel::IShort : BioLabel::ILong;
        std::size_t j = i + 1;
        while (j < labels.size() && labels[j] == inside) ++j;
        spans.push_back(SpanAnnotation{i, j, kind, std::nullopt});
        i = j;
      } else {
        ++i;
      }
    }
    return spans;
  };

  std::map<std::string, Tally> tallies;
  tallies[kShortClass];
  tallies[kLongClass];
  for (const auto& name : {kShortClass, kLongClass}) {
    SpanKind kind = name == kShortClass ? SpanKind::ShortForm : SpanKind::LongForm;
    Tally& tally = tallies[name];
    for (const auto& [g, p] : pairs) {
      auto gold_spans = decode(*g);
      auto pred_spans = decode(*p);
      for (const auto& gs : gold_spans) {
        if (gs.kind == kind) ++tally.support;
      }
      for (const auto& ps : pred_spans) {
        if (ps.kind != kind) continue;
        ++tally.predicted;
        std::size_t hits = 0;
        for (const auto& gs : gold_spans) {
          if (gs == ps) ++hits;
        }
        if (hits > 0) ++tally.correct;
      }
    }
  }
  return finish_ai(tallies);
}

EvalReport oracle_evaluate_ad(std::span<const AdInstance> gold,
                              const std::map<std::string, std::string>& pred) {
  check_ad_inputs(gold, pred);

  std::set<std::string> classes;
  for (const auto& inst : gold) {
    classes.insert(normalize_long_form(*inst.gold));
    classes.insert(normalize_long_form(pred.at(inst.id)));
  }
  std::map<std::string, Tally> tallies;
  for (const auto& cls : classes) {
    Tally tally;
    for (const auto& inst : gold) {
      std::string gold_form = normalize_long_form(*inst.gold);
      std::string pred_form = normalize_long_form(pred.at(inst.id));
      if (gold_form == cls) ++tally.support;
      if (pred_form == cls) ++tally.predicted;
      if (gold_form == cls && pred_form == cls) ++tally.correct;
    }
    tallies.emplace(cls, tally);
  }
  return finish_ad(tallies);
}

std::string format_report_table(const EvalReport& report) {
  std::size_t width = 5;  // "macro"
  for (const auto& [name, _] : report.per_class) {
    width = std::max(width, name.size());
  }
  width = std::min<std::size_t>(width, 48);

  auto pct = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%9.2f", v * 100.0);
    return std::string(buf);
  };
  auto num = [](std::size_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%10zu", v);
    return std::string(buf);
  };
  auto pad = [&](const std::string& name) {
    std::string out = name.substr(0, width);
    out.resize(width, ' ');
    return out;
  };

  std::string out = pad("class") + " precision    recall        f1" +
                    "   support  predicted\n";
  for (const auto& [name, m] : report.per_class) {
    out += pad(name) + pct(m.precision) + pct(m.recall) + pct(m.f1) +
           num(m.support) + num(m.predicted) + "\n";
  }
  out += pad("macro") + pct(report.macro_precision) + pct(report.macro_recall) +
         pct(report.f1) + num(report.total_gold) + num(report.total_predicted) +
         "\n";
  return out;
}

}  // namespace acro
