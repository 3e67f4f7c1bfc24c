#include "acro/types.hpp"

#include "acro/text.hpp"

namespace acro {

void AcronymDictionary::add(std::string_view acronym, std::string_view long_form) {
  std::string norm = normalize_long_form(long_form);
  if (acronym.empty() || norm.empty()) return;
  entries_[std::string(acronym)].insert(std::move(norm));
}

bool AcronymDictionary::contains(std::string_view acronym) const {
  return entries_.find(std::string(acronym)) != entries_.end();
}

std::vector<std::string> AcronymDictionary::long_forms(std::string_view acronym) const {
  auto it = entries_.find(std::string(acronym));
  if (it == entries_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

AcronymDictionary AcronymDictionary::ambiguous_only() const {
  AcronymDictionary out;
  for (const auto& [acr, forms] : entries_) {
    if (forms.size() >= 2) out.entries_[acr] = forms;
  }
  return out;
}

double AcronymDictionary::mean_long_forms() const {
  if (entries_.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& [acr, forms] : entries_) total += forms.size();
  return static_cast<double>(total) / static_cast<double>(entries_.size());
}

std::uint64_t FrequencyTable::count(std::string_view acronym,
                                    std::string_view long_form) const {
  auto it = counts.find(std::string(acronym));
  if (it == counts.end()) return 0;
  auto jt = it->second.find(std::string(long_form));
  return jt == it->second.end() ? 0 : jt->second;
}

bool FrequencyTable::has_acronym(std::string_view acronym) const {
  auto it = counts.find(std::string(acronym));
  return it != counts.end() && !it->second.empty();
}

}  // namespace acro
