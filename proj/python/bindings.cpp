#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "acro/ad_corpus.hpp"
#include "acro/bio.hpp"
#include "acro/disambiguate.hpp"
#include "acro/evaluate.hpp"
#include "acro/identify.hpp"
#include "acro/io.hpp"
#include "acro/text.hpp"

namespace py = pybind11;

namespace {

std::string span_repr(const acro::SpanAnnotation& s) {
  std::string out = "SpanAnnotation([" + std::to_string(s.start) + "," +
                    std::to_string(s.end) + "), " +
                    (s.kind == acro::SpanKind::ShortForm ? "short" : "long");
  if (s.partner) out += ", partner=" + std::to_string(*s.partner);
  return out + ")";
}

}  // namespace

PYBIND11_MODULE(_acro, m) {
  m.doc() = "acronym identification and disambiguation toolkit";

  py::register_exception<acro::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<acro::DataError>(m, "DataError", PyExc_ValueError);

  py::enum_<acro::BioLabel>(m, "BioLabel")
      .value("B_short", acro::BioLabel::BShort)
      .value("I_short", acro::BioLabel::IShort)
      .value("B_long", acro::BioLabel::BLong)
      .value("I_long", acro::BioLabel::ILong)
      .value("O", acro::BioLabel::Outside);

  py::enum_<acro::SpanKind>(m, "SpanKind")
      .value("ShortForm", acro::SpanKind::ShortForm)
      .value("LongForm", acro::SpanKind::LongForm);

  py::class_<acro::SpanAnnotation>(m, "SpanAnnotation")
      .def(py::init<>())
      .def(py::init([](std::size_t start, std::size_t end, acro::SpanKind kind,
                       std::optional<std::size_t> partner) {
             return acro::SpanAnnotation{start, end, kind, partner};
           }),
           py::arg("start"), py::arg("end"), py::arg("kind"),
           py::arg("partner") = std::nullopt)
      .def_readwrite("start", &acro::SpanAnnotation::start)
      .def_readwrite("end", &acro::SpanAnnotation::end)
      .def_readwrite("kind", &acro::SpanAnnotation::kind)
      .def_readwrite("partner", &acro::SpanAnnotation::partner)
      .def("__eq__", [](const acro::SpanAnnotation& a,
                        const acro::SpanAnnotation& b) { return a == b; })
      .def("__repr__", &span_repr);

  py::class_<acro::TokenSentence>(m, "TokenSentence")
      .def(py::init<>())
      .def(py::init([](std::string id, std::vector<std::string> tokens,
                       std::optional<std::vector<acro::BioLabel>> labels) {
             return acro::TokenSentence{std::move(id), std::move(tokens),
                                        std::move(labels)};
           }),
           py::arg("id"), py::arg("tokens"), py::arg("labels") = std::nullopt)
      .def_readwrite("id", &acro::TokenSentence::id)
      .def_readwrite("tokens", &acro::TokenSentence::tokens)
      .def_readwrite("labels", &acro::TokenSentence::labels)
      .def("__eq__", [](const acro::TokenSentence& a,
                        const acro::TokenSentence& b) { return a == b; });

  py::class_<acro::Document>(m, "Document")
      .def(py::init<>())
      .def(py::init([](std::string doc_id, std::vector<acro::TokenSentence> sentences) {
             return acro::Document{std::move(doc_id), std::move(sentences)};
           }),
           py::arg("doc_id"), py::arg("sentences"))
      .def_readwrite("doc_id", &acro::Document::doc_id)
      .def_readwrite("sentences", &acro::Document::sentences);

  py::class_<acro::AcronymDictionary>(m, "AcronymDictionary")
      .def(py::init<>())
      .def("add", &acro::AcronymDictionary::add, py::arg("acronym"),
           py::arg("long_form"))
      .def("contains", &acro::AcronymDictionary::contains)
      .def("long_forms", &acro::AcronymDictionary::long_forms)
      .def("ambiguous_only", &acro::AcronymDictionary::ambiguous_only)
      .def("mean_long_forms", &acro::AcronymDictionary::mean_long_forms)
      .def("entries", &acro::AcronymDictionary::entries)
      .def("__len__", &acro::AcronymDictionary::size)
      .def("__contains__", &acro::AcronymDictionary::contains);

  py::class_<acro::AdInstance>(m, "AdInstance")
      .def(py::init<>())
      .def(py::init([](std::string id, acro::TokenSentence sentence,
                       std::size_t acronym_index, std::vector<std::string> candidates,
                       std::optional<std::string> gold) {
             return acro::AdInstance{std::move(id), std::move(sentence), acronym_index,
                                     std::move(candidates), std::move(gold)};
           }),
           py::arg("id"), py::arg("sentence"), py::arg("acronym_index"),
           py::arg("candidates") = std::vector<std::string>{},
           py::arg("gold") = std::nullopt)
      .def_readwrite("id", &acro::AdInstance::id)
      .def_readwrite("sentence", &acro::AdInstance::sentence)
      .def_readwrite("acronym_index", &acro::AdInstance::acronym_index)
      .def_readwrite("candidates", &acro::AdInstance::candidates)
      .def_readwrite("gold", &acro::AdInstance::gold)
      .def("acronym", &acro::AdInstance::acronym);

  py::class_<acro::FrequencyTable>(m, "FrequencyTable")
      .def(py::init<>())
      .def_readwrite("counts", &acro::FrequencyTable::counts)
      .def("count", &acro::FrequencyTable::count)
      .def("has_acronym", &acro::FrequencyTable::has_acronym);

  py::class_<acro::IdentifierConfig>(m, "IdentifierConfig")
      .def(py::init<>())
      .def_readwrite("uppercase_ratio_threshold",
                     &acro::IdentifierConfig::uppercase_ratio_threshold)
      .def_readwrite("strict_threshold", &acro::IdentifierConfig::strict_threshold)
      .def_readwrite("min_acronym_length", &acro::IdentifierConfig::min_acronym_length)
      .def_readwrite("max_longform_prefix",
                     &acro::IdentifierConfig::max_longform_prefix)
      .def_readwrite("relaxed_mode", &acro::IdentifierConfig::relaxed_mode)
      .def_static("baseline", &acro::IdentifierConfig::baseline,
                  py::arg("relaxed") = false)
      .def_static("candidate_filter", &acro::IdentifierConfig::candidate_filter);

  py::class_<acro::TokenRange>(m, "TokenRange")
      .def_readonly("begin", &acro::TokenRange::begin)
      .def_readonly("end", &acro::TokenRange::end);

  py::class_<acro::SilverConfig>(m, "SilverConfig")
      .def(py::init<>())
      .def_readwrite("case_sensitive_acronyms",
                     &acro::SilverConfig::case_sensitive_acronyms)
      .def_readwrite("propagate_backward", &acro::SilverConfig::propagate_backward);

  py::class_<acro::LocalDefinition>(m, "LocalDefinition")
      .def_readonly("sentence_id", &acro::LocalDefinition::sentence_id)
      .def_readonly("acronym", &acro::LocalDefinition::acronym)
      .def_readonly("long_form", &acro::LocalDefinition::long_form);

  py::class_<acro::GenerationReport>(m, "GenerationReport")
      .def(py::init<>())
      .def_readonly("documents", &acro::GenerationReport::documents)
      .def_readonly("local_definitions", &acro::GenerationReport::local_definitions)
      .def_readonly("instances_per_acronym",
                    &acro::GenerationReport::instances_per_acronym)
      .def("total_instances", &acro::GenerationReport::total_instances)
      .def_property_readonly("conflicts", [](const acro::GenerationReport& r) {
        std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> out;
        for (const auto& c : r.conflicts) {
          out.emplace_back(c.doc_id, c.acronym, c.long_forms);
        }
        return out;
      });

  py::class_<acro::Prediction>(m, "Prediction")
      .def_readonly("long_form", &acro::Prediction::long_form)
      .def_readonly("low_confidence", &acro::Prediction::low_confidence);

  py::class_<acro::ContextProfile>(m, "ContextProfile")
      .def(py::init<>())
      .def_readwrite("vocabulary", &acro::ContextProfile::vocabulary)
      .def_readwrite("idf", &acro::ContextProfile::idf)
      .def_readwrite("profiles", &acro::ContextProfile::profiles)
      .def_readwrite("num_sentences", &acro::ContextProfile::num_sentences)
      .def_readonly("zero_vector_senses", &acro::ContextProfile::zero_vector_senses)
      .def("vectorize", &acro::ContextProfile::vectorize);

  py::class_<acro::ClassMetrics>(m, "ClassMetrics")
      .def_readonly("precision", &acro::ClassMetrics::precision)
      .def_readonly("recall", &acro::ClassMetrics::recall)
      .def_readonly("f1", &acro::ClassMetrics::f1)
      .def_readonly("support", &acro::ClassMetrics::support)
      .def_readonly("predicted", &acro::ClassMetrics::predicted)
      .def_readonly("correct", &acro::ClassMetrics::correct);

  py::class_<acro::EvalReport>(m, "EvalReport")
      .def_readonly("per_class", &acro::EvalReport::per_class)
      .def_readonly("macro_precision", &acro::EvalReport::macro_precision)
      .def_readonly("macro_recall", &acro::EvalReport::macro_recall)
      .def_readonly("f1", &acro::EvalReport::f1)
      .def_readonly("total_gold", &acro::EvalReport::total_gold)
      .def_readonly("total_predicted", &acro::EvalReport::total_predicted)
      .def_readonly("total_correct", &acro::EvalReport::total_correct);

  // text helpers
  m.def("tokenize_text", &acro::tokenize_text, py::arg("text"));
  m.def("normalize_long_form", &acro::normalize_long_form, py::arg("s"));

  // BIO codec
  m.def("parse_bio_label", &acro::parse_bio_label);
  m.def("format_bio_label",
        [](acro::BioLabel l) { return acro::format_bio_label(l); });
  m.def("is_bio_valid", [](const std::vector<acro::BioLabel>& labels) {
    return acro::is_bio_valid(labels);
  });
  m.def("repair_bio", [](std::vector<acro::BioLabel> labels) {
    acro::repair_bio(labels);
    return labels;
  });
  m.def("extract_spans", &acro::extract_spans, py::arg("sentence"));
  m.def(
      "spans_to_labels",
      [](const std::vector<acro::SpanAnnotation>& spans, std::size_t n) {
        return acro::spans_to_labels(spans, n);
      },
      py::arg("spans"), py::arg("n"));
  m.def("pair_spans", [](std::vector<acro::SpanAnnotation> spans) {
    acro::pair_spans(spans);
    return spans;
  });

  // identification
  m.def("is_candidate_acronym", &acro::is_candidate_acronym, py::arg("token"),
        py::arg("cfg"));
  m.def(
      "find_candidate_long_forms",
      [](const acro::TokenSentence& s, const std::vector<std::size_t>& positions,
         const acro::IdentifierConfig& cfg) {
        return acro::find_candidate_long_forms(s, positions, cfg);
      },
      py::arg("sentence"), py::arg("acronym_positions"), py::arg("cfg"));
  m.def(
      "filter_sentences",
      [](const std::vector<acro::TokenSentence>& corpus,
         const acro::IdentifierConfig& cfg) {
        return acro::filter_sentences(corpus, cfg);
      },
      py::arg("corpus"), py::arg("cfg"));
  m.def(
      "match_long_form",
      [](const std::string& acronym, const std::vector<std::string>& window,
         bool acronym_after_window) {
        return acro::match_long_form(acronym, window, acronym_after_window);
      },
      py::arg("acronym"), py::arg("window"), py::arg("acronym_after_window") = true);
  m.def("identify", &acro::identify, py::arg("sentence"), py::arg("cfg"));

  // AD corpus construction
  m.def(
      "build_dictionary",
      [](const std::vector<acro::TokenSentence>& annotated, bool ambiguous_only) {
        return acro::build_dictionary(annotated, ambiguous_only);
      },
      py::arg("annotated"), py::arg("ambiguous_only") = true);
  m.def("find_local_definitions", &acro::find_local_definitions, py::arg("doc"),
        py::arg("dict"), py::arg("cfg") = acro::SilverConfig{});
  m.def(
      "generate_silver_ad",
      [](const std::vector<acro::Document>& corpus, const acro::AcronymDictionary& dict,
         const acro::SilverConfig& cfg) {
        acro::GenerationReport report;
        auto instances = acro::generate_silver_ad(corpus, dict, cfg, &report);
        return py::make_tuple(instances, report);
      },
      py::arg("corpus"), py::arg("dict"), py::arg("cfg") = acro::SilverConfig{});

  // disambiguation
  m.def("train_frequency", [](const std::vector<acro::AdInstance>& train) {
    return acro::train_frequency(train);
  });
  m.def("predict_frequency", &acro::predict_frequency, py::arg("instance"),
        py::arg("table"));
  m.def("train_context", [](const std::vector<acro::AdInstance>& train) {
    return acro::train_context(train);
  });
  m.def("predict_context", &acro::predict_context, py::arg("instance"),
        py::arg("profile"), py::arg("table"), py::arg("alpha"));

  // evaluation
  m.def(
      "evaluate_ai",
      [](const std::vector<acro::TokenSentence>& gold,
         const std::vector<acro::TokenSentence>& pred) {
        return acro::evaluate_ai(gold, pred);
      },
      py::arg("gold"), py::arg("pred"));
  m.def(
      "evaluate_ad",
      [](const std::vector<acro::AdInstance>& gold,
         const std::map<std::string, std::string>& pred) {
        return acro::evaluate_ad(gold, pred);
      },
      py::arg("gold"), py::arg("pred"));
  m.def(
      "oracle_evaluate_ai",
      [](const std::vector<acro::TokenSentence>& gold,
         const std::vector<acro::TokenSentence>& pred) {
        return acro::oracle_evaluate_ai(gold, pred);
      },
      py::arg("gold"), py::arg("pred"));
  m.def(
      "oracle_evaluate_ad",
      [](const std::vector<acro::AdInstance>& gold,
         const std::map<std::string, std::string>& pred) {
        return acro::oracle_evaluate_ad(gold, pred);
      },
      py::arg("gold"), py::arg("pred"));
  m.def("format_report_table", &acro::format_report_table);

  // file I/O
  m.def("load_ai_dataset", [](const std::filesystem::path& path) {
    return acro::load_ai_dataset(path);
  });
  m.def("save_ai_dataset",
        [](const std::filesystem::path& path,
           const std::vector<acro::TokenSentence>& sentences) {
          acro::save_ai_dataset(path, sentences);
        });
  m.def("load_documents", [](const std::filesystem::path& path) {
    return acro::load_documents(path);
  });
  m.def("save_documents", [](const std::filesystem::path& path,
                             const std::vector<acro::Document>& docs) {
    acro::save_documents(path, docs);
  });
  m.def(
      "load_ad_dataset",
      [](const std::filesystem::path& path,
         const std::optional<acro::AcronymDictionary>& dict) {
        return acro::load_ad_dataset(path, dict ? &*dict : nullptr);
      },
      py::arg("path"), py::arg("dict") = std::nullopt);
  m.def("save_ad_dataset", [](const std::filesystem::path& path,
                              const std::vector<acro::AdInstance>& instances) {
    acro::save_ad_dataset(path, instances);
  });
  m.def("load_dictionary", &acro::load_dictionary);
  m.def("save_dictionary", &acro::save_dictionary);
  m.def(
      "load_frequency",
      [](const std::filesystem::path& path,
         const std::optional<acro::AcronymDictionary>& dict) {
        return acro::load_frequency(path, dict ? &*dict : nullptr);
      },
      py::arg("path"), py::arg("dict") = std::nullopt);
  m.def("save_frequency", &acro::save_frequency);
  m.def("load_profiles", &acro::load_profiles);
  m.def("save_profiles", &acro::save_profiles);
  m.def("load_predictions", &acro::load_predictions);
  m.def("save_predictions", &acro::save_predictions);
  m.def("report_to_json_string", &acro::report_to_json_string);
}
