#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "acro/ad_corpus.hpp"
#include "acro/bio.hpp"
#include "acro/disambiguate.hpp"
#include "acro/evaluate.hpp"
#include "acro/identify.hpp"
#include "acro/io.hpp"
#include "acro/text.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void print_warnings(const acro::LoadReport& report) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
}

struct Options {
  std::string input;
  std::string output;
  std::string dict;
  std::string freq;
  std::string profiles;
  std::string gold;
  std::string pred;
  std::string task;
  double alpha = 0.0;
  double threshold = 0.6;
  bool relaxed = false;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
};

// Per-document silver generation fanned out over a bounded worker pool;
// results are merged in input order so the output is independent of
// scheduling.
std::vector<acro::AdInstance> generate_silver_parallel(
    const std::vector<acro::Document>& docs, const acro::AcronymDictionary& dict,
    const acro::SilverConfig& cfg, unsigned jobs, acro::GenerationReport& report) {
  if (jobs <= 1 || docs.size() <= 1) {
    return acro::generate_silver_ad(docs, dict, cfg, &report);
  }
  std::vector<std::vector<acro::AdInstance>> instances(docs.size());
  std::vector<acro::GenerationReport> reports(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= docs.size()) return;
      std::span<const acro::Document> one(&docs[i], 1);
      instances[i] = acro::generate_silver_ad(one, dict, cfg, &reports[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<unsigned>(jobs, docs.size()); ++t) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) t.join();

  std::vector<acro::AdInstance> merged;
  report = acro::GenerationReport{};
  report.documents = docs.size();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (auto& inst : instances[i]) merged.push_back(std::move(inst));
    report.local_definitions += reports[i].local_definitions;
    for (const auto& [acr, n] : reports[i].instances_per_acronym) {
      report.instances_per_acronym[acr] += n;
    }
    for (auto& c : reports[i].conflicts) report.conflicts.push_back(std::move(c));
  }
  return merged;
}

json generation_report_to_json(const acro::GenerationReport& report) {
  json out;
  out["documents"] = report.documents;
  out["local_definitions"] = report.local_definitions;
  out["instances"] = report.total_instances();
  json per_acr = json::object();
  for (const auto& [acr, n] : report.instances_per_acronym) per_acr[acr] = n;
  out["instances_per_acronym"] = std::move(per_acr);
  json conflicts = json::array();
  for (const auto& c : report.conflicts) {
    conflicts.push_back(
        {{"doc_id", c.doc_id}, {"acronym", c.acronym}, {"long_forms", c.long_forms}});
  }
  out["conflicts"] = std::move(conflicts);
  return out;
}

fs::path sibling_report_path(const fs::path& output) {
  fs::path p = output;
  p.replace_extension(".report.json");
  return p;
}

int cmd_identify(const Options& opt) {
  acro::LoadReport load_report;
  std::vector<acro::TokenSentence> sentences =
      acro::load_ai_dataset(opt.input, &load_report);
  print_warnings(load_report);

  acro::IdentifierConfig cfg = acro::IdentifierConfig::baseline(opt.relaxed);
  cfg.uppercase_ratio_threshold = opt.threshold;
  cfg.validate();

  std::vector<acro::TokenSentence> predictions;
  predictions.reserve(sentences.size());
  for (const auto& s : sentences) {
    std::vector<acro::SpanAnnotation> spans = acro::identify(s, cfg);
    acro::TokenSentence out = s;
    out.labels = acro::spans_to_labels(spans, s.tokens.size());
    predictions.push_back(std::move(out));
  }
  acro::save_ai_dataset(opt.output, predictions);
  std::cerr << "identified spans in " << predictions.size() << " sentence(s)\n";
  return kExitOk;
}

int cmd_build_dict(const Options& opt) {
  acro::LoadReport load_report;
  std::vector<acro::TokenSentence> sentences =
      acro::load_ai_dataset(opt.input, &load_report);
  print_warnings(load_report);

  acro::AcronymDictionary dict = acro::build_dictionary(sentences);
  acro::save_dictionary(opt.output, dict);
  std::cout << "ambiguous acronyms: " << dict.size()
            << ", mean long forms per acronym: " << dict.mean_long_forms() << "\n";
  return kExitOk;
}

int cmd_gen_ad(const Options& opt) {
  acro::LoadReport load_report;
  std::vector<acro::Document> docs = acro::load_documents(opt.input, &load_report);
  print_warnings(load_report);
  acro::AcronymDictionary dict = acro::load_dictionary(opt.dict);

  acro::GenerationReport report;
  std::vector<acro::AdInstance> instances =
      generate_silver_parallel(docs, dict, {}, opt.jobs, report);
  acro::save_ad_dataset(opt.output, instances);

  std::ofstream rf(sibling_report_path(opt.output));
  rf << generation_report_to_json(report).dump(2) << "\n";
  std::cout << "generated " << instances.size() << " instance(s) from "
            << docs.size() << " document(s), " << report.conflicts.size()
            << " conflict(s)\n";
  return kExitOk;
}

int cmd_train_freq(const Options& opt) {
  acro::LoadReport load_report;
  std::vector<acro::AdInstance> train =
      acro::load_ad_dataset(opt.input, nullptr, &load_report);
  print_warnings(load_report);
  acro::FrequencyTable table = acro::train_frequency(train);
  acro::save_frequency(opt.output, table);
  std::cout << "counted " << train.size() << " instance(s) over "
            << table.counts.size() << " acronym(s)\n";
  return kExitOk;
}

int cmd_train_context(const Options& opt) {
  acro::LoadReport load_report;
  std::vector<acro::AdInstance> train =
      acro::load_ad_dataset(opt.input, nullptr, &load_report);
  print_warnings(load_report);
  acro::ContextProfile profile = acro::train_context(train);
  acro::save_profiles(opt.output, profile);
  std::cout << "built context profiles for " << profile.profiles.size()
            << " acronym(s), vocabulary size " << profile.vocabulary.size() << "\n";
  if (!profile.zero_vector_senses.empty()) {
    std::cerr << "warning: " << profile.zero_vector_senses.size()
              << " sense(s) produced a zero context vector\n";
  }
  return kExitOk;
}

int cmd_disambiguate(const Options& opt) {
  acro::LoadReport load_report;
  acro::AcronymDictionary dict = acro::load_dictionary(opt.dict);
  std::vector<acro::AdInstance> instances =
      acro::load_ad_dataset(opt.input, &dict, &load_report);
  print_warnings(load_report);
  acro::FrequencyTable table = acro::load_frequency(opt.freq, &dict);

  std::optional<acro::ContextProfile> profile;
  if (!opt.profiles.empty()) {
    profile = acro::load_profiles(opt.profiles);
  }
  if (opt.alpha < 0.0 || opt.alpha > 1.0) {
    throw acro::DataError("--alpha must be in [0,1]");
  }

  std::map<std::string, std::string> predictions;
  std::size_t low_confidence = 0;
  for (const auto& inst : instances) {
    acro::Prediction pred =
        profile ? acro::predict_context(inst, *profile, table, opt.alpha)
                : acro::predict_frequency(inst, table);
    if (pred.low_confidence) ++low_confidence;
    if (!predictions.emplace(inst.id, pred.long_form).second) {
      throw acro::DataError("duplicate instance id '" + inst.id + "'");
    }
  }
  acro::save_predictions(opt.output, predictions);
  std::cout << "predicted " << predictions.size() << " instance(s)";
  if (low_confidence > 0) std::cout << ", " << low_confidence << " low-confidence";
  std::cout << "\n";
  return kExitOk;
}

int cmd_evaluate(const Options& opt) {
  acro::EvalReport report;
  acro::LoadReport load_report;
  if (opt.task == "ai") {
    std::vector<acro::TokenSentence> gold =
        acro::load_ai_dataset(opt.gold, &load_report);
    std::vector<acro::TokenSentence> pred =
        acro::load_ai_dataset(opt.pred, &load_report);
    print_warnings(load_report);
    report = acro::evaluate_ai(gold, pred);
  } else if (opt.task == "ad") {
    std::vector<acro::AdInstance> gold =
        acro::load_ad_dataset(opt.gold, nullptr, &load_report);
    print_warnings(load_report);
    std::map<std::string, std::string> pred = acro::load_predictions(opt.pred);
    report = acro::evaluate_ad(gold, pred);
  } else {
    throw acro::DataError("--task must be 'ai' or 'ad'");
  }
  std::cout << acro::format_report_table(report);
  if (!opt.output.empty()) acro::save_report(opt.output, report);
  return kExitOk;
}

int cmd_stats(const Options& opt) {
  json stats;
  acro::LoadReport load_report;
  if (opt.task == "ai") {
    auto sentences = acro::load_ai_dataset(opt.input, &load_report);
    std::size_t tokens = 0, labeled = 0, with_spans = 0;
    std::size_t short_spans = 0, long_spans = 0;
    std::set<std::string> acronyms, long_forms;
    for (const auto& s : sentences) {
      tokens += s.tokens.size();
      if (!s.labels) continue;
      ++labeled;
      auto spans = acro::extract_spans(s);
      if (!spans.empty()) ++with_spans;
      for (const auto& span : spans) {
        if (span.kind == acro::SpanKind::ShortForm) {
          ++short_spans;
          acronyms.insert(acro::join_words(s.tokens, span.start, span.end));
        } else {
          ++long_spans;
          long_forms.insert(acro::normalize_long_form(
              acro::join_words(s.tokens, span.start, span.end)));
        }
      }
    }
    stats = {{"sentences", sentences.size()}, {"tokens", tokens},
             {"labeled_sentences", labeled},  {"sentences_with_spans", with_spans},
             {"short_spans", short_spans},    {"long_spans", long_spans},
             {"unique_acronyms", acronyms.size()},
             {"unique_long_forms", long_forms.size()}};
  } else if (opt.task == "ad") {
    auto instances = acro::load_ad_dataset(opt.input, nullptr, &load_report);
    std::set<std::string> acronyms, forms;
    std::size_t labeled = 0;
    for (const auto& inst : instances) {
      acronyms.insert(inst.acronym());
      if (inst.gold) {
        ++labeled;
        forms.insert(*inst.gold);
      }
    }
    stats = {{"instances", instances.size()},
             {"labeled_instances", labeled},
             {"unique_acronyms", acronyms.size()},
             {"unique_long_forms", forms.size()},
             {"avg_samples_per_long_form",
              forms.empty() ? 0.0
                            : static_cast<double>(labeled) /
                                  static_cast<double>(forms.size())}};
  } else if (opt.task == "dict") {
    auto dict = acro::load_dictionary(opt.input);
    std::size_t max_forms = 0;
    for (const auto& [acr, f] : dict.entries()) {
      max_forms = std::max(max_forms, f.size());
    }
    stats = {{"entries", dict.size()},
             {"ambiguous_entries", dict.ambiguous_only().size()},
             {"mean_long_forms", dict.mean_long_forms()},
             {"max_long_forms", max_forms}};
  } else if (opt.task == "docs") {
    auto docs = acro::load_documents(opt.input, &load_report);
    std::size_t sentences = 0, labeled = 0;
    for (const auto& d : docs) {
      sentences += d.sentences.size();
      for (const auto& s : d.sentences) {
        if (s.labels) ++labeled;
      }
    }
    stats = {{"documents", docs.size()},
             {"sentences", sentences},
             {"labeled_sentences", labeled}};
  } else {
    throw acro::DataError("--task must be one of ai, ad, dict, docs");
  }
  print_warnings(load_report);
  std::cout << stats.dump(2) << "\n";
  if (!opt.output.empty()) {
    std::ofstream out(opt.output);
    out << stats.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_pipeline(const Options& opt) {
  fs::path out_dir(opt.output);
  std::string stage = "setup";
  try {
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    stage = "load";
    acro::LoadReport load_report;
    std::vector<acro::Document> docs = acro::load_documents(opt.input, &load_report);
    print_warnings(load_report);
    std::size_t total_sentences = 0;
    for (const auto& d : docs) total_sentences += d.sentences.size();

    stage = "filter";
    acro::IdentifierConfig filter_cfg = acro::IdentifierConfig::candidate_filter();
    std::vector<acro::Document> filtered;
    std::size_t kept_sentences = 0;
    for (const auto& doc : docs) {
      acro::Document fd;
      fd.doc_id = doc.doc_id;
      fd.sentences = acro::filter_sentences(doc.sentences, filter_cfg);
      kept_sentences += fd.sentences.size();
      if (!fd.sentences.empty()) filtered.push_back(std::move(fd));
    }
    acro::save_documents(out_dir / "filtered.json", filtered);

    stage = "build-dict";
    std::vector<acro::TokenSentence> labeled;
    for (const auto& doc : filtered) {
      for (const auto& s : doc.sentences) {
        if (s.labels) labeled.push_back(s);
      }
    }
    acro::AcronymDictionary full_dict =
        acro::build_dictionary(labeled, /*ambiguous_only=*/false);
    acro::AcronymDictionary dict = full_dict.ambiguous_only();
    acro::save_dictionary(out_dir / "dictionary.json", dict);
    if (dict.empty()) {
      std::cerr << "warning: no ambiguous acronyms found; AD output will be empty\n";
    }

    stage = "gen-ad";
    acro::GenerationReport gen_report;
    std::vector<acro::AdInstance> instances =
        generate_silver_parallel(filtered, dict, {}, opt.jobs, gen_report);
    acro::save_ad_dataset(out_dir / "ad_instances.json", instances);
    std::ofstream rf(out_dir / "ad_instances.report.json");
    rf << generation_report_to_json(gen_report).dump(2) << "\n";
    rf.close();

    stage = "train-freq";
    acro::FrequencyTable table = acro::train_frequency(instances);
    acro::save_frequency(out_dir / "frequency.json", table);

    stage = "stats";
    std::size_t pairs = 0;
    for (const auto& [acr, senses] : table.counts) pairs += senses.size();
    json stats = {
        {"documents", docs.size()},
        {"sentences", total_sentences},
        {"filtered_sentences", kept_sentences},
        {"dictionary",
         {{"entries", dict.size()},
          {"entries_before_ambiguity_filter", full_dict.size()},
          {"mean_long_forms", dict.mean_long_forms()}}},
        {"ad",
         {{"instances", instances.size()},
          {"local_definitions", gen_report.local_definitions},
          {"conflicts", gen_report.conflicts.size()}}},
        {"frequency", {{"acronyms", table.counts.size()}, {"pairs", pairs}}}};
    std::ofstream sf(out_dir / "stats.json");
    sf << stats.dump(2) << "\n";
    sf.close();
    std::cout << stats.dump(2) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: pipeline stage '" << stage << "' failed: " << e.what()
              << "\n";
    return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acronym identification and disambiguation toolkit"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed,
                 "seed for synthetic-data generation; core commands are "
                 "deterministic and ignore it");

  auto* identify = app.add_subcommand(
      "identify", "mark acronym and long-form spans with the rule-based identifier");
  identify->add_option("--input", opt.input, "identification-format JSON")->required();
  identify->add_option("--output", opt.output, "prediction file")->required();
  identify->add_flag("--relaxed", opt.relaxed,
                     "also mark acronyms away from parentheses");
  identify->add_option("--threshold", opt.threshold,
                       "uppercase-ratio threshold (exclusive)", true);

  auto* build_dict = app.add_subcommand(
      "build-dict", "induce the ambiguous-acronym dictionary from gold annotations");
  build_dict->add_option("--input", opt.input, "labeled identification JSON")->required();
  build_dict->add_option("--output", opt.output, "dictionary file")->required();

  auto* gen_ad = app.add_subcommand(
      "gen-ad", "generate silver disambiguation instances from documents");
  gen_ad->add_option("--input", opt.input, "documents JSON")->required();
  gen_ad->add_option("--dict", opt.dict, "dictionary file")->required();
  gen_ad->add_option("--output", opt.output, "instances file")->required();
  gen_ad->add_option("--jobs", opt.jobs, "worker threads", true);

  auto* train_freq = app.add_subcommand(
      "train-freq", "count (acronym, long form) pairs in training instances");
  train_freq->add_option("--input", opt.input, "labeled disambiguation JSON")->required();
  train_freq->add_option("--output", opt.output, "frequency table file")->required();

  auto* train_context = app.add_subcommand(
      "train-context", "build tf-idf context profiles per (acronym, long form)");
  train_context->add_option("--input", opt.input, "labeled disambiguation JSON")
      ->required();
  train_context->add_option("--output", opt.output, "profiles file")->required();

  auto* disambiguate = app.add_subcommand(
      "disambiguate", "predict long forms with the frequency or context ranker");
  disambiguate->add_option("--input", opt.input, "disambiguation JSON")->required();
  disambiguate->add_option("--dict", opt.dict, "dictionary file")->required();
  disambiguate->add_option("--freq", opt.freq, "frequency table file")->required();
  disambiguate->add_option("--profiles", opt.profiles,
                           "context profiles file (enables the mixed ranker)");
  disambiguate->add_option("--alpha", opt.alpha,
                           "context weight in [0,1]; 0 is pure frequency", true);
  disambiguate->add_option("--output", opt.output, "predictions file")->required();

  auto* evaluate =
      app.add_subcommand("evaluate", "score predictions with macro-averaged P/R/F1");
  evaluate->add_option("gold", opt.gold, "gold file")->required();
  evaluate->add_option("pred", opt.pred, "prediction file")->required();
  evaluate->add_option("--task", opt.task, "ai or ad")->required();
  evaluate->add_option("--output", opt.output, "also write the report as JSON");

  auto* stats = app.add_subcommand("stats", "dataset statistics");
  stats->add_option("--input", opt.input, "input file")->required();
  stats->add_option("--task", opt.task, "ai, ad, dict or docs")->required();
  stats->add_option("--output", opt.output, "also write the statistics as JSON");

  auto* pipeline = app.add_subcommand(
      "pipeline", "filter -> build-dict -> gen-ad -> train-freq over a corpus");
  pipeline->add_option("--input", opt.input, "documents JSON")->required();
  pipeline->add_option("--output", opt.output, "output directory")->required();
  pipeline->add_option("--jobs", opt.jobs, "worker threads", true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(identify)) return cmd_identify(opt);
    if (app.got_subcommand(build_dict)) return cmd_build_dict(opt);
    if (app.got_subcommand(gen_ad)) return cmd_gen_ad(opt);
    if (app.got_subcommand(train_freq)) return cmd_train_freq(opt);
    if (app.got_subcommand(train_context)) return cmd_train_context(opt);
    if (app.got_subcommand(disambiguate)) return cmd_disambiguate(opt);
    if (app.got_subcommand(evaluate)) return cmd_evaluate(opt);
    if (app.got_subcommand(stats)) return cmd_stats(opt);
    if (app.got_subcommand(pipeline)) return cmd_pipeline(opt);
  } catch (const acro::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const acro::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
