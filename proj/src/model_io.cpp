#include "mass/model_io.hpp"

#include <array>

#include <fmt/format.h>
#include <json.hpp>

#include "mass/error.hpp"

namespace mass {
namespace {

using nlohmann::json;

constexpr std::array kSections = {SectionKind::Exam, SectionKind::ClinicalHistory, SectionKind::Comparison,
                                  SectionKind::Findings, SectionKind::Impression};

SectionKind section_from_name(const std::string& name) {
  for (auto kind : kSections)
    if (header_name(kind) == name) return kind;
  throw Error(ErrorKind::CorruptModel, fmt::format("unknown section '{}'", name));
}

json to_json(const Report& r) {
  json sections = json::object();
  for (const auto& [kind, body] : r.sections) sections[std::string(header_name(kind))] = body;
  json j{{"id", r.id}, {"sections", sections}};
  j["category"] = r.reported_category ? json(r.reported_category->value()) : json(nullptr);
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.id = j.at("id").get<std::string>();
  for (const auto& [name, body] : j.at("sections").items()) r.sections[section_from_name(name)] = body.get<std::string>();
  if (!j.at("category").is_null()) r.reported_category = BiradsCategory(j.at("category").get<int>());
  return r;
}

json to_json(const Sentence& s) {
  json tokens = json::array();
  for (const auto& t : s.tokens) tokens.push_back(json::array({t.surface, t.stem, t.position}));
  return json{{"index", s.index}, {"text", s.text}, {"tokens", tokens}};
}

Sentence sentence_from_json(const json& j) {
  Sentence s;
  s.index = j.at("index").get<std::size_t>();
  s.text = j.at("text").get<std::string>();
  for (const auto& t : j.at("tokens"))
    s.tokens.push_back({t.at(0).get<std::string>(), t.at(1).get<std::string>(), t.at(2).get<std::size_t>()});
  return s;
}

json to_json(const SentenceSyntax& s) {
  json patterns = json::object();
  for (const auto& [p, occ] : s.patterns) patterns[p] = json{{"count", occ.count}, {"positions", occ.positions}};
  json terms = json::object();
  for (const auto& [t, locs] : s.important_term_locations) terms[t] = locs;
  return json{{"tagged", s.tagged_with_words}, {"tags", s.tags_only}, {"patterns", patterns}, {"important_terms", terms}};
}

SentenceSyntax syntax_from_json(const json& j) {
  SentenceSyntax s;
  s.tagged_with_words = j.at("tagged").get<std::string>();
  s.tags_only = j.at("tags").get<std::string>();
  for (const auto& [p, occ] : j.at("patterns").items())
    s.patterns[p] = {occ.at("count").get<std::size_t>(), occ.at("positions").get<std::vector<std::size_t>>()};
  for (const auto& [t, locs] : j.at("important_terms").items())
    s.important_term_locations[t] = locs.get<std::vector<std::size_t>>();
  return s;
}

json to_json(const ScoredSentence& s) {
  json terms = json::array();
  for (const auto& t : s.terms) terms.push_back(json::array({t.term, t.atf, t.idf}));
  return json{{"report_id", s.report_id}, {"ordinal", s.ordinal}, {"sentence", to_json(s.sentence)},
              {"score", s.score},         {"boosted", s.boosted}, {"terms", terms},
              {"syntax", to_json(s.syntax)}};
}

ScoredSentence scored_from_json(const json& j) {
  ScoredSentence s;
  s.report_id = j.at("report_id").get<std::string>();
  s.ordinal = j.at("ordinal").get<std::size_t>();
  s.sentence = sentence_from_json(j.at("sentence"));
  s.score = j.at("score").get<double>();
  s.boosted = j.at("boosted").get<bool>();
  for (const auto& t : j.at("terms"))
    s.terms.push_back({t.at(0).get<std::string>(), t.at(1).get<double>(), t.at(2).get<double>()});
  s.syntax = syntax_from_json(j.at("syntax"));
  return s;
}

json to_json(const Summary& s) {
  json terms = json::array();
  for (const auto& [term, t] : s.terms)
    terms.push_back(json{{"term", t.term}, {"raw_tf", t.raw_tf}, {"df", t.df}, {"atf", t.atf}, {"idf", t.idf},
                         {"stopword", t.stopword}});
  json reps = json::array();
  for (const auto& r : s.representatives) reps.push_back(to_json(r));
  json patterns = json::object();
  for (const auto& [p, ps] : s.patterns) {
    json locations = json::array();
    for (const auto& l : ps.locations)
      locations.push_back(json{{"representative", l.representative}, {"positions", l.positions}});
    patterns[p] = json{{"count", ps.count}, {"locations", locations}};
  }
  return json{{"report_count", s.report_count}, {"terms", terms}, {"representatives", reps}, {"patterns", patterns}};
}

Summary summary_from_json(const json& j) {
  Summary s;
  s.report_count = j.at("report_count").get<std::size_t>();
  for (const auto& t : j.at("terms")) {
    TermStats ts;
    ts.term = t.at("term").get<std::string>();
    ts.raw_tf = t.at("raw_tf").get<std::size_t>();
    ts.df = t.at("df").get<std::size_t>();
    ts.atf = t.at("atf").get<double>();
    ts.idf = t.at("idf").get<double>();
    ts.stopword = t.at("stopword").get<bool>();
    s.terms[ts.term] = ts;
  }
  for (const auto& r : j.at("representatives")) s.representatives.push_back(scored_from_json(r));
  for (const auto& [p, ps] : j.at("patterns").items()) {
    auto& entry = s.patterns[p];
    entry.count = ps.at("count").get<std::size_t>();
    for (const auto& l : ps.at("locations"))
      entry.locations.push_back({l.at("representative").get<std::size_t>(),
                                 l.at("positions").get<std::vector<std::size_t>>()});
  }
  return s;
}

json to_json(const ModelConfig& c) {
  return json{{"k", c.summarizer.k},
              {"boost_factor", c.summarizer.boost_factor},
              {"idf_formula_id", c.summarizer.idf_formula_id},
              {"normalize_terms", c.summarizer.normalize_terms},
              {"weights", {{"semantic", c.weights.semantic}, {"pattern", c.weights.pattern}, {"term", c.weights.term}}}};
}

ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  c.summarizer.k = j.at("k").get<std::size_t>();
  c.summarizer.boost_factor = j.at("boost_factor").get<double>();
  c.summarizer.idf_formula_id = j.at("idf_formula_id").get<std::string>();
  c.summarizer.normalize_terms = j.at("normalize_terms").get<bool>();
  const auto& w = j.at("weights");
  c.weights = {w.at("semantic").get<double>(), w.at("pattern").get<double>(), w.at("term").get<double>()};
  return c;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string serialize_model(const ModelBundle& model) {
  json centroids = json::array();
  for (const auto& c : model.centroids) {
    json members = json::array();
    for (const auto& m : c.members) members.push_back(to_json(m));
    centroids.push_back(json{{"category", c.category.value()}, {"summary", to_json(c.summary)}, {"members", members}});
  }
  json doc{{"format_version", model.format_version},
           {"resource_digest", model.resource_digest},
           {"config", to_json(model.config)},
           {"centroids", centroids}};
  return doc.dump(2) + "\n";
}

ModelBundle parse_model(std::string_view text, const std::optional<std::string>& expected_digest) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptModel, fmt::format("model is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object() || !doc.contains("format_version") || !doc["format_version"].is_string())
    throw Error(ErrorKind::CorruptModel, "model has no format_version");
  auto version = doc["format_version"].get<std::string>();
  if (version != kModelFormatVersion)
    throw Error(ErrorKind::VersionMismatch,
                fmt::format("model format {} is not supported (expected {})", version, kModelFormatVersion));

  ModelBundle model;
  try {
    model.format_version = version;
    model.resource_digest = doc.at("resource_digest").get<std::string>();
    model.config = config_from_json(doc.at("config"));
    for (const auto& c : doc.at("centroids")) {
      CentroidVector centroid;
      centroid.category = BiradsCategory(c.at("category").get<int>());
      centroid.summary = summary_from_json(c.at("summary"));
      for (const auto& m : c.at("members")) centroid.members.push_back(report_from_json(m));
      model.centroids.push_back(std::move(centroid));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptModel, fmt::format("malformed model: {}", e.what()));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CorruptModel) throw;
    throw Error(ErrorKind::CorruptModel, fmt::format("malformed model: {}", e.what()));
  }
  if (expected_digest && model.resource_digest != *expected_digest)
    throw Error(ErrorKind::CorruptModel, "resource digest does not match the loaded resources");
  try {
    model.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CorruptModel) throw;
    throw Error(ErrorKind::CorruptModel, fmt::format("malformed model: {}", e.what()));
  }
  return model;
}

void save_model(const ModelBundle& model, const std::filesystem::path& path) { write_file(path, serialize_model(model)); }

ModelBundle load_model(const std::filesystem::path& path, const Resources& resources) {
  return parse_model(read_file(path), resources.digest());
}

std::string export_centroid_xml(const CentroidVector& centroid) {
  const auto& s = centroid.summary;
  std::string out = fmt::format("<category id=\"{}\" reports=\"{}\">\n", centroid.category.value(), s.report_count);
  out += "  <terms>\n";
  for (const auto& [term, t] : s.terms) {
    if (t.stopword) continue;
    out += fmt::format("    <term text=\"{}\" atf=\"{:.4f}\" idf=\"{:.4f}\"/>\n", xml_escape(term), t.atf, t.idf);
  }
  out += "  </terms>\n  <patterns>\n";
  for (const auto& [p, ps] : s.patterns)
    out += fmt::format("    <pattern text=\"{}\" count=\"{}\"/>\n", xml_escape(p), ps.count);
  out += "  </patterns>\n  <sentences>\n";
  for (std::size_t i = 0; i < s.representatives.size(); ++i) {
    const auto& r = s.representatives[i];
    out += fmt::format("    <sentence rank=\"{}\" report=\"{}\" score=\"{:.4f}\">\n", i + 1, xml_escape(r.report_id),
                       r.score);
    out += fmt::format("      <text>{}</text>\n", xml_escape(r.sentence.text));
    for (const auto& t : r.terms)
      out += fmt::format("      <term text=\"{}\" atf=\"{:.4f}\" idf=\"{:.4f}\"/>\n", xml_escape(t.term), t.atf, t.idf);
    out += fmt::format("      <tagged>{}</tagged>\n", xml_escape(r.syntax.tagged_with_words));
    out += fmt::format("      <tags>{}</tags>\n", xml_escape(r.syntax.tags_only));
    for (const auto& [p, occ] : r.syntax.patterns) {
      std::string positions;
      for (auto pos : occ.positions) positions += (positions.empty() ? "" : ",") + std::to_string(pos);
      out += fmt::format("      <pattern text=\"{}\" count=\"{}\" positions=\"{}\"/>\n", xml_escape(p), occ.count,
                         positions);
    }
    out += "    </sentence>\n";
  }
  out += "  </sentences>\n</category>\n";
  return out;
}

}  // namespace mass
