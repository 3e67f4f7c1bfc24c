#include "acro/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "acro/bio.hpp"
#include "acro/text.hpp"

namespace acro {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << content;
  if (!out) {
    throw DataError("write failed for '" + path.string() + "'");
  }
}

json parse_json(const std::string& text, const std::filesystem::path& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// A dataset file is either one JSON array or newline-delimited objects.
std::vector<json> load_records(const std::filesystem::path& path) {
  std::string text = read_file(path);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  if (text[first] == '[') {
    json root = parse_json(text, path);
    std::vector<json> records;
    for (auto& rec : root) records.push_back(std::move(rec));
    return records;
  }
  std::vector<json> records;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ParseError(path.string() + " line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return records;
}

void write_records(const std::filesystem::path& path, const std::vector<json>& records) {
  std::string out = "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += records[i].dump();
  }
  out += records.empty() ? "]\n" : "\n]\n";
  write_file(path, out);
}

bool token_has_whitespace(const std::string& tok) {
  for (char c : tok) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      return true;
    }
  }
  return false;
}

std::string record_name(const json& rec, std::size_t index) {
  if (rec.is_object() && rec.contains("id") && rec["id"].is_string()) {
    return "record '" + rec["id"].get<std::string>() + "'";
  }
  return "record #" + std::to_string(index);
}

std::vector<std::string> parse_tokens(const json& rec, const std::string& name) {
  if (!rec.contains("tokens") || !rec["tokens"].is_array()) {
    throw ParseError(name + ": missing or non-array field 'tokens'");
  }
  std::vector<std::string> tokens;
  for (const auto& t : rec["tokens"]) {
    if (!t.is_string()) {
      throw ParseError(name + ": field 'tokens' must contain strings");
    }
    tokens.push_back(t.get<std::string>());
  }
  if (tokens.empty()) {
    throw ParseError(name + ": field 'tokens' is empty");
  }
  for (const auto& tok : tokens) {
    if (tok.empty() || token_has_whitespace(tok)) {
      throw ParseError(name + ": field 'tokens' has an empty or whitespace token");
    }
  }
  return tokens;
}

TokenSentence parse_sentence(const json& rec, std::size_t index,
                             LoadReport* report, bool allow_text) {
  std::string name = record_name(rec, index);
  if (!rec.is_object()) {
    throw ParseError(name + ": record is not an object");
  }
  TokenSentence s;
  if (rec.contains("id")) {
    if (!rec["id"].is_string()) throw ParseError(name + ": field 'id' must be a string");
    s.id = rec["id"].get<std::string>();
  } else {
    s.id = "rec-" + std::to_string(index);
  }
  if (allow_text && !rec.contains("tokens") && rec.contains("text")) {
    if (!rec["text"].is_string()) {
      throw ParseError(name + ": field 'text' must be a string");
    }
    s.tokens = tokenize_text(rec["text"].get<std::string>());
    if (s.tokens.empty()) throw ParseError(name + ": field 'text' is empty");
  } else {
    s.tokens = parse_tokens(rec, name);
  }
  if (rec.contains("labels") && !rec["labels"].is_null()) {
    if (!rec["labels"].is_array()) {
      throw ParseError(name + ": field 'labels' must be an array");
    }
    std::vector<BioLabel> labels;
    for (const auto& l : rec["labels"]) {
      if (!l.is_string()) {
        throw ParseError(name + ": field 'labels' must contain strings");
      }
      try {
        labels.push_back(parse_bio_label(l.get<std::string>()));
      } catch (const ParseError& e) {
        throw ParseError(name + ": field 'labels': " + e.what());
      }
    }
    if (labels.size() != s.tokens.size()) {
      throw ParseError(name + ": field 'labels': length " +
                       std::to_string(labels.size()) + " does not match " +
                       std::to_string(s.tokens.size()) + " tokens");
    }
    if (!is_bio_valid(labels)) {
      std::size_t repaired = repair_bio(labels);
      if (report) {
        report->warnings.push_back(name + ": BIO-invalid label sequence, " +
                                   std::to_string(repaired) +
                                   " stray I label(s) promoted to B");
      }
    }
    s.labels = std::move(labels);
  }
  return s;
}

json sentence_to_json(const TokenSentence& s) {
  json rec;
  rec["id"] = s.id;
  rec["tokens"] = s.tokens;
  if (s.labels) {
    json labels = json::array();
    for (BioLabel l : *s.labels) labels.push_back(format_bio_label(l));
    rec["labels"] = std::move(labels);
  }
  return rec;
}

}  // namespace

std::vector<TokenSentence> load_ai_dataset(const std::filesystem::path& path,
                                           LoadReport* report) {
  std::vector<json> records = load_records(path);
  std::vector<TokenSentence> sentences;
  sentences.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    sentences.push_back(parse_sentence(records[i], i, report, /*allow_text=*/false));
  }
  return sentences;
}

void save_ai_dataset(const std::filesystem::path& path,
                     std::span<const TokenSentence> sentences) {
  std::vector<json> records;
  records.reserve(sentences.size());
  for (const auto& s : sentences) records.push_back(sentence_to_json(s));
  write_records(path, records);
}

std::vector<Document> load_documents(const std::filesystem::path& path,
                                     LoadReport* report) {
  std::vector<json> records = load_records(path);
  std::vector<Document> docs;
  docs.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const json& rec = records[i];
    if (!rec.is_object() || !rec.contains("doc_id") || !rec["doc_id"].is_string()) {
      throw ParseError("document #" + std::to_string(i) +
                       ": missing string field 'doc_id'");
    }
    Document doc;
    doc.doc_id = rec["doc_id"].get<std::string>();
    if (!rec.contains("sentences") || !rec["sentences"].is_array()) {
      throw ParseError("document '" + doc.doc_id +
                       "': missing or non-array field 'sentences'");
    }
    std::set<std::string> ids;
    std::size_t si = 0;
    for (const auto& srec : rec["sentences"]) {
      TokenSentence s = parse_sentence(srec, si, report, /*allow_text=*/true);
      if (!srec.contains("id")) {
        s.id = doc.doc_id + "-s" + std::to_string(si);
      }
      if (!ids.insert(s.id).second) {
        throw ParseError("document '" + doc.doc_id + "': duplicate sentence id '" +
                         s.id + "'");
      }
      doc.sentences.push_back(std::move(s));
      ++si;
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

void save_documents(const std::filesystem::path& path, std::span<const Document> docs) {
  std::vector<json> records;
  records.reserve(docs.size());
  for (const auto& doc : docs) {
    json rec;
    rec["doc_id"] = doc.doc_id;
    json sentences = json::array();
    for (const auto& s : doc.sentences) sentences.push_back(sentence_to_json(s));
    rec["sentences"] = std::move(sentences);
    records.push_back(std::move(rec));
  }
  write_records(path, records);
}

std::vector<AdInstance> load_ad_dataset(const std::filesystem::path& path,
                                        const AcronymDictionary* dict,
                                        LoadReport* report) {
  std::vector<json> records = load_records(path);
  std::vector<AdInstance> instances;
  instances.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const json& rec = records[i];
    std::string name = record_name(rec, i);
    AdInstance inst;
    inst.sentence = parse_sentence(rec, i, report, /*allow_text=*/false);
    inst.id = inst.sentence.id;
    if (!rec.contains("acronym") || !rec["acronym"].is_number_unsigned()) {
      throw ParseError(name + ": missing or non-integer field 'acronym'");
    }
    inst.acronym_index = rec["acronym"].get<std::size_t>();
    if (inst.acronym_index >= inst.sentence.tokens.size()) {
      throw ParseError(name + ": field 'acronym': index " +
                       std::to_string(inst.acronym_index) + " out of range for " +
                       std::to_string(inst.sentence.tokens.size()) + " tokens");
    }
    if (rec.contains("label") && !rec["label"].is_null()) {
      if (!rec["label"].is_string()) {
        throw ParseError(name + ": field 'label' must be a string");
      }
      inst.gold = normalize_long_form(rec["label"].get<std::string>());
    }
    if (dict) {
      inst.candidates = dict->long_forms(inst.acronym());
      if (inst.candidates.empty()) {
        throw ParseError(name + ": acronym '" + inst.acronym() +
                         "' is not in the dictionary");
      }
      if (inst.gold &&
          std::find(inst.candidates.begin(), inst.candidates.end(), *inst.gold) ==
              inst.candidates.end()) {
        throw ParseError(name + ": field 'label': gold long form '" + *inst.gold +
                         "' is not among the dictionary candidates");
      }
    }
    instances.push_back(std::move(inst));
  }
  return instances;
}

void save_ad_dataset(const std::filesystem::path& path,
                     std::span<const AdInstance> instances) {
  std::vector<json> records;
  records.reserve(instances.size());
  for (const auto& inst : instances) {
    json rec;
    rec["id"] = inst.id;
    rec["tokens"] = inst.sentence.tokens;
    rec["acronym"] = inst.acronym_index;
    if (inst.gold) rec["label"] = *inst.gold;
    records.push_back(std::move(rec));
  }
  write_records(path, records);
}

AcronymDictionary load_dictionary(const std::filesystem::path& path) {
  json root = parse_json(read_file(path), path);
  if (!root.is_object()) {
    throw ParseError(path.string() + ": dictionary must be a JSON object");
  }
  AcronymDictionary dict;
  for (const auto& [acr, forms] : root.items()) {
    if (!forms.is_array()) {
      throw ParseError(path.string() + ": entry '" + acr + "' must be an array");
    }
    for (const auto& form : forms) {
      if (!form.is_string()) {
        throw ParseError(path.string() + ": entry '" + acr +
                         "' must contain strings");
      }
      dict.add(acr, form.get<std::string>());
    }
  }
  return dict;
}

void save_dictionary(const std::filesystem::path& path, const AcronymDictionary& dict) {
  json root = json::object();
  for (const auto& [acr, forms] : dict.entries()) {
    root[acr] = std::vector<std::string>(forms.begin(), forms.end());
  }
  write_file(path, root.dump(2) + "\n");
}

FrequencyTable load_frequency(const std::filesystem::path& path,
                              const AcronymDictionary* dict) {
  json root = parse_json(read_file(path), path);
  if (!root.is_object()) {
    throw ParseError(path.string() + ": frequency table must be a JSON object");
  }
  FrequencyTable table;
  for (const auto& [acr, senses] : root.items()) {
    if (!senses.is_object()) {
      throw ParseError(path.string() + ": entry '" + acr + "' must be an object");
    }
    for (const auto& [form, count] : senses.items()) {
      if (!count.is_number_unsigned()) {
        throw ParseError(path.string() + ": count for ('" + acr + "', '" + form +
                         "') must be a non-negative integer");
      }
      if (dict) {
        auto forms = dict->long_forms(acr);
        if (std::find(forms.begin(), forms.end(), normalize_long_form(form)) ==
            forms.end()) {
          throw ParseError(path.string() + ": pair ('" + acr + "', '" + form +
                           "') is not in the dictionary");
        }
      }
      table.counts[acr][normalize_long_form(form)] = count.get<std::uint64_t>();
    }
  }
  return table;
}

void save_frequency(const std::filesystem::path& path, const FrequencyTable& table) {
  json root = json::object();
  for (const auto& [acr, senses] : table.counts) {
    json entry = json::object();
    for (const auto& [form, count] : senses) entry[form] = count;
    root[acr] = std::move(entry);
  }
  write_file(path, root.dump(2) + "\n");
}

ContextProfile load_profiles(const std::filesystem::path& path) {
  json root = parse_json(read_file(path), path);
  ContextProfile profile;
  try {
    profile.num_sentences = root.at("num_sentences").get<std::size_t>();
    for (const auto& [term, idx] : root.at("vocabulary").items()) {
      profile.vocabulary[term] = idx.get<std::size_t>();
    }
    profile.idf = root.at("idf").get<std::vector<double>>();
    for (const auto& [acr, senses] : root.at("profiles").items()) {
      for (const auto& [form, vec] : senses.items()) {
        ContextProfile::SparseVector sparse;
        for (const auto& [idx, w] : vec.items()) {
          sparse[std::stoull(idx)] = w.get<double>();
        }
        profile.profiles[acr][form] = std::move(sparse);
      }
    }
    if (root.contains("zero_vector_senses")) {
      for (const auto& pair : root["zero_vector_senses"]) {
        profile.zero_vector_senses.emplace_back(pair.at(0).get<std::string>(),
                                                pair.at(1).get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (profile.idf.size() != profile.vocabulary.size()) {
    throw ParseError(path.string() + ": idf length does not match vocabulary size");
  }
  return profile;
}

void save_profiles(const std::filesystem::path& path, const ContextProfile& profile) {
  json root;
  root["num_sentences"] = profile.num_sentences;
  json vocab = json::object();
  for (const auto& [term, idx] : profile.vocabulary) vocab[term] = idx;
  root["vocabulary"] = std::move(vocab);
  root["idf"] = profile.idf;
  json profiles = json::object();
  for (const auto& [acr, senses] : profile.profiles) {
    json senses_json = json::object();
    for (const auto& [form, vec] : senses) {
      json sparse = json::object();
      for (const auto& [idx, w] : vec) sparse[std::to_string(idx)] = w;
      senses_json[form] = std::move(sparse);
    }
    profiles[acr] = std::move(senses_json);
  }
  root["profiles"] = std::move(profiles);
  json zeros = json::array();
  for (const auto& [acr, form] : profile.zero_vector_senses) {
    zeros.push_back(json::array({acr, form}));
  }
  root["zero_vector_senses"] = std::move(zeros);
  write_file(path, root.dump(2) + "\n");
}

std::map<std::string, std::string> load_predictions(const std::filesystem::path& path) {
  std::vector<json> records = load_records(path);
  std::map<std::string, std::string> predictions;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const json& rec = records[i];
    std::string name = record_name(rec, i);
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string()) {
      throw ParseError(name + ": missing string field 'id'");
    }
    if (!rec.contains("prediction") || !rec["prediction"].is_string()) {
      throw ParseError(name + ": missing string field 'prediction'");
    }
    std::string id = rec["id"].get<std::string>();
    if (!predictions.emplace(id, rec["prediction"].get<std::string>()).second) {
      throw ParseError(name + ": duplicate prediction id");
    }
  }
  return predictions;
}

void save_predictions(const std::filesystem::path& path,
                      const std::map<std::string, std::string>& predictions) {
  std::vector<json> records;
  records.reserve(predictions.size());
  for (const auto& [id, prediction] : predictions) {
    json rec;
    rec["id"] = id;
    rec["prediction"] = prediction;
    records.push_back(std::move(rec));
  }
  write_records(path, records);
}

std::string report_to_json_string(const EvalReport& report) {
  json root;
  root["macro_precision"] = report.macro_precision;
  root["macro_recall"] = report.macro_recall;
  root["f1"] = report.f1;
  root["counts"] = {{"gold", report.total_gold},
                    {"predicted", report.total_predicted},
                    {"correct", report.total_correct}};
  json classes = json::object();
  for (const auto& [name, m] : report.per_class) {
    classes[name] = {{"precision", m.precision}, {"recall", m.recall},
                     {"f1", m.f1},               {"support", m.support},
                     {"predicted", m.predicted}, {"correct", m.correct}};
  }
  root["per_class"] = std::move(classes);
  return root.dump(2) + "\n";
}

void save_report(const std::filesystem::path& path, const EvalReport& report) {
  write_file(path, report_to_json_string(report));
}

}  // namespace acro
