#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "acro/disambiguate.hpp"
#include "acro/evaluate.hpp"
#include "acro/types.hpp"

namespace acro {

// All files are UTF-8 JSON. Datasets are accepted either as one JSON array
// of record objects (the shared-task release layout) or as newline-delimited
// JSON, autodetected; they are always written as an array with one record
// per line. Writers iterate sorted containers, so rewriting the same data
// is byte-identical.
//
// Record schemas:
//   identification: {"id", "tokens": [...], "labels": [...]?}
//   disambiguation: {"id", "tokens": [...], "acronym": <token index>,
//                    "label": <long form>?}
//   documents:      {"doc_id", "sentences": [identification records,
//                    "text" accepted in place of "tokens"]}
//   dictionary:     {acronym: [long form, ...]}
//   frequency:      {acronym: {long form: count}}
//   predictions:    [{"id", "prediction"}]

struct LoadReport {
  std::vector<std::string> warnings;  // e.g. repaired BIO sequences
};

std::vector<TokenSentence> load_ai_dataset(const std::filesystem::path& path,
                                           LoadReport* report = nullptr);
void save_ai_dataset(const std::filesystem::path& path,
                     std::span<const TokenSentence> sentences);

std::vector<Document> load_documents(const std::filesystem::path& path,
                                     LoadReport* report = nullptr);
void save_documents(const std::filesystem::path& path,
                    std::span<const Document> docs);

/// When `dict` is given, candidate long forms are attached from it and each
/// record's acronym token must be a dictionary key; without it candidates
/// stay empty (enough for training the baselines).
std::vector<AdInstance> load_ad_dataset(const std::filesystem::path& path,
                                        const AcronymDictionary* dict = nullptr,
                                        LoadReport* report = nullptr);
void save_ad_dataset(const std::filesystem::path& path,
                     std::span<const AdInstance> instances);

AcronymDictionary load_dictionary(const std::filesystem::path& path);
void save_dictionary(const std::filesystem::path& path,
                     const AcronymDictionary& dict);

/// When `dict` is given, every counted pair must appear in it.
FrequencyTable load_frequency(const std::filesystem::path& path,
                              const AcronymDictionary* dict = nullptr);
void save_frequency(const std::filesystem::path& path, const FrequencyTable& table);

ContextProfile load_profiles(const std::filesystem::path& path);
void save_profiles(const std::filesystem::path& path, const ContextProfile& profile);

std::map<std::string, std::string> load_predictions(const std::filesystem::path& path);
void save_predictions(const std::filesystem::path& path,
                      const std::map<std::string, std::string>& predictions);

std::string report_to_json_string(const EvalReport& report);
void save_report(const std::filesystem::path& path, const EvalReport& report);

}  // namespace acro
