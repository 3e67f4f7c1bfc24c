#include "acro/disambiguate.hpp"

#include <cmath>

#include "acro/text.hpp"

namespace acro {

namespace {

// Lowercased sentence tokens with every token equal to the acronym removed
// (case-insensitive; the acronym appears with every sense and carries no
// signal).
std::vector<std::string> context_terms(const TokenSentence& s,
                                       std::string_view acronym) {
  std::string acr = to_lower(acronym);
  std::vector<std::string> terms;
  terms.reserve(s.tokens.size());
  for (const auto& tok : s.tokens) {
    std::string lower = to_lower(tok);
    if (lower != acr) terms.push_back(std::move(lower));
  }
  return terms;
}

double l2_norm(const ContextProfile::SparseVector& v) {
  double sum = 0.0;
  for (const auto& [idx, w] : v) sum += w * w;
  return std::sqrt(sum);
}

double dot(const ContextProfile::SparseVector& a,
           const ContextProfile::SparseVector& b) {
  double sum = 0.0;
  auto it = a.begin();
  auto jt = b.begin();
  while (it != a.end() && jt != b.end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      sum += it->second * jt->second;
      ++it;
      ++jt;
    }
  }
  return sum;
}

}  // namespace

FrequencyTable train_frequency(std::span<const AdInstance> train) {
  FrequencyTable table;
  for (const auto& inst : train) {
    if (!inst.gold) {
      throw DataError("instance '" + inst.id + "': missing gold long form");
    }
    ++table.counts[inst.acronym()][normalize_long_form(*inst.gold)];
  }
  return table;
}

Prediction predict_frequency(const AdInstance& inst, const FrequencyTable& table) {
  if (inst.candidates.empty()) {
    throw DataError("instance '" + inst.id + "': no candidate long forms");
  }
  Prediction pred;
  pred.low_confidence = !table.has_acronym(inst.acronym());
  std::uint64_t best_count = 0;
  for (const auto& candidate : inst.candidates) {
    std::string norm = normalize_long_form(candidate);
    std::uint64_t count = table.count(inst.acronym(), norm);
    if (pred.long_form.empty() || count > best_count ||
        (count == best_count && norm < pred.long_form)) {
      pred.long_form = std::move(norm);
      best_count = count;
    }
  }
  return pred;
}

ContextProfile::SparseVector ContextProfile::vectorize(
    const TokenSentence& s, std::string_view acronym) const {
  SparseVector vec;
  for (const auto& term : context_terms(s, acronym)) {
    auto it = vocabulary.find(term);
    if (it != vocabulary.end()) vec[it->second] += 1.0;
  }
  for (auto& [idx, w] : vec) w *= idf[idx];
  return vec;
}

ContextProfile train_context(std::span<const AdInstance> train) {
  ContextProfile profile;
  profile.num_sentences = train.size();

  // Document frequencies over training sentences.
  std::map<std::string, std::size_t> df;
  for (const auto& inst : train) {
    if (!inst.gold) {
      throw DataError("instance '" + inst.id + "': missing gold long form");
    }
    std::set<std::string> seen;
    for (auto& term : context_terms(inst.sentence, inst.acronym())) {
      seen.insert(std::move(term));
    }
    for (const auto& term : seen) ++df[term];
  }
  for (const auto& [term, _] : df) {
    profile.vocabulary.emplace(term, profile.vocabulary.size());
  }
  profile.idf.resize(profile.vocabulary.size());
  double n = static_cast<double>(profile.num_sentences);
  for (const auto& [term, idx] : profile.vocabulary) {
    profile.idf[idx] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[term]))) + 1.0;
  }

  // Aggregate term frequencies per sense, weight, normalize.
  std::map<std::string, std::map<std::string, ContextProfile::SparseVector>> tf;
  for (const auto& inst : train) {
    auto& vec = tf[inst.acronym()][normalize_long_form(*inst.gold)];
    for (const auto& term : context_terms(inst.sentence, inst.acronym())) {
      vec[profile.vocabulary.at(term)] += 1.0;
    }
  }
  for (auto& [acronym, senses] : tf) {
    for (auto& [long_form, vec] : senses) {
      for (auto& [idx, w] : vec) w *= profile.idf[idx];
      double norm = l2_norm(vec);
      if (norm == 0.0) {
        profile.zero_vector_senses.emplace_back(acronym, long_form);
      } else {
        for (auto& [idx, w] : vec) w /= norm;
      }
      profile.profiles[acronym][long_form] = std::move(vec);
    }
  }
  return profile;
}

Prediction predict_context(const AdInstance& inst, const ContextProfile& profile,
                           const FrequencyTable& table, double alpha) {
  if (inst.candidates.empty()) {
    throw DataError("instance '" + inst.id + "': no candidate long forms");
  }
  auto senses = profile.profiles.find(inst.acronym());
  if (senses == profile.profiles.end()) {
    Prediction pred = predict_frequency(inst, table);
    pred.low_confidence = true;
    return pred;
  }

  ContextProfile::SparseVector sentence = profile.vectorize(inst.sentence, inst.acronym());
  double norm = l2_norm(sentence);
  if (norm == 0.0) {
    Prediction pred = predict_frequency(inst, table);
    pred.low_confidence = true;
    return pred;
  }
  for (auto& [idx, w] : sentence) w /= norm;

  std::uint64_t max_count = 0;
  for (const auto& candidate : inst.candidates) {
    max_count = std::max(max_count,
                         table.count(inst.acronym(), normalize_long_form(candidate)));
  }

  Prediction pred;
  double best_score = 0.0;
  bool any_cosine = false;
  for (const auto& candidate : inst.candidates) {
    std::string norm_candidate = normalize_long_form(candidate);
    double cosine = 0.0;
    auto it = senses->second.find(norm_candidate);
    if (it != senses->second.end()) cosine = dot(sentence, it->second);
    if (cosine > 0.0) any_cosine = true;
    double freq = max_count == 0
                      ? 0.0
                      : static_cast<double>(table.count(inst.acronym(), norm_candidate)) /
                            static_cast<double>(max_count);
    double score = alpha * cosine + (1.0 - alpha) * freq;
    if (pred.long_form.empty() || score > best_score ||
        (score == best_score && norm_candidate < pred.long_form)) {
      pred.long_form = std::move(norm_candidate);
      best_score = score;
    }
  }
  if (!any_cosine) {
    Prediction fallback = predict_frequency(inst, table);
    fallback.low_confidence = true;
    return fallback;
  }
  return pred;
}

}  // namespace acro
