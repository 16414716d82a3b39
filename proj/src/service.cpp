#include "mass/service.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "mass/error.hpp"
#include "mass/model_io.hpp"

namespace mass {
namespace {

using nlohmann::json;

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidConfig, fmt::format("'{}' is not a number: {}", key, value));
}

long parse_long(const std::string& key, const std::string& value) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw Error(ErrorKind::InvalidConfig, fmt::format("'{}' is not an integer: {}", key, value));
  return v;
}

bool valid_report_id(std::string_view id) {
  if (id.empty() || id.size() > 128) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isalnum(c) || c == '-' || c == '_'; });
}

Response json_response(int status, json body) {
  body["api_version"] = kApiVersion;
  return {status, body.dump(), "application/json"};
}

Response error_response(int status, std::string_view kind, std::string_view message) {
  return json_response(status, json{{"error", {{"kind", kind}, {"message", message}}}});
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingFindings:
    case ErrorKind::InvalidCategory:
    case ErrorKind::SpanOutOfBounds:
    case ErrorKind::OverlappingSpans:
    case ErrorKind::UnlabeledReport:
    case ErrorKind::InvalidEntry:
      return 400;
    case ErrorKind::DuplicateId:
      return 409;
    default:
      return 500;
  }
}

template <typename Fn>
Response guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    return error_response(400, "MalformedBody", e.what());
  } catch (const Error& e) {
    return error_response(status_for(e.kind()), to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

json parse_body(std::string_view body) {
  auto j = json::parse(body);
  if (!j.is_object()) throw json::type_error::create(302, "request body must be a JSON object", nullptr);
  return j;
}

std::string required_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw json::type_error::create(302, fmt::format("field '{}' must be a string", key), nullptr);
  return j[key].get<std::string>();
}

json detection_json(const Detection& d) {
  return json{{"start", d.span.start},
              {"end", d.span.end},
              {"found", d.found_term},
              {"kind", d.kind == DetectionKind::Unsanctioned ? "unsanctioned" : "misspelling"},
              {"suggestions", d.suggestions}};
}

json scorecard_json(const Scorecard& card) {
  json rows = json::array();
  for (const auto& [c, s] : card.scores) {
    json row{{"category", c.value()}, {"score", s}, {"percent", card.percent(c)}};
    if (auto it = card.breakdown.find(c); it != card.breakdown.end()) {
      row["semantic"] = it->second.semantic;
      row["pattern"] = it->second.pattern;
      row["term"] = it->second.term;
    }
    rows.push_back(row);
  }
  json ties = json::array();
  for (auto c : card.ties) ties.push_back(c.value());
  return json{{"scores", rows}, {"inferred", card.inferred.value()}, {"ties", ties}};
}

void add_words(SpellChecker& speller, std::string_view text) {
  for (const auto& w : split_words(text))
    if (std::any_of(w.begin(), w.end(), [](unsigned char c) { return std::isalpha(c); })) speller.add(w);
}

}  // namespace

void ServiceConfig::validate() const {
  namespace fs = std::filesystem;
  if (port < 1024 || port > 65535)
    throw Error(ErrorKind::InvalidConfig, fmt::format("port {} outside 1024..65535", port));
  if (!fs::is_directory(corpus_dir))
    throw Error(ErrorKind::InvalidConfig, fmt::format("corpus_dir {} is not a directory", corpus_dir.string()));
  if (!fs::is_directory(resources_dir))
    throw Error(ErrorKind::InvalidConfig, fmt::format("resources_dir {} is not a directory", resources_dir.string()));
  if (model_path.empty()) throw Error(ErrorKind::InvalidConfig, "model_path is required");
  auto parent = model_path.parent_path();
  if (!parent.empty() && !fs::is_directory(parent))
    throw Error(ErrorKind::InvalidConfig, fmt::format("model directory {} does not exist", parent.string()));
  if (lexicon_path && !fs::is_regular_file(*lexicon_path))
    throw Error(ErrorKind::InvalidConfig, fmt::format("lexicon_path {} is not a file", lexicon_path->string()));
  model.validate();
}

ServiceConfig parse_service_config(std::string_view text, const std::filesystem::path& base_dir) {
  ServiceConfig cfg;
  auto resolve = [&](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::InvalidConfig, fmt::format("line {}: expected key = value", line_no));
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key == "port") cfg.port = static_cast<int>(parse_long(key, value));
    else if (key == "bind") cfg.bind = value;
    else if (key == "corpus_dir") cfg.corpus_dir = resolve(value);
    else if (key == "model_path") cfg.model_path = resolve(value);
    else if (key == "resources_dir") cfg.resources_dir = resolve(value);
    else if (key == "lexicon_path") cfg.lexicon_path = resolve(value);
    else if (key == "k") cfg.model.summarizer.k = static_cast<std::size_t>(std::max(0L, parse_long(key, value)));
    else if (key == "boost_factor") cfg.model.summarizer.boost_factor = parse_double(key, value);
    else if (key == "w_sem") cfg.model.weights.semantic = parse_double(key, value);
    else if (key == "w_pat") cfg.model.weights.pattern = parse_double(key, value);
    else if (key == "w_term") cfg.model.weights.term = parse_double(key, value);
    else throw Error(ErrorKind::InvalidConfig, fmt::format("line {}: unknown key '{}'", line_no, key));
  }
  return cfg;
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  return parse_service_config(read_file(path), path.parent_path());
}

ModelStore::ModelStore(std::shared_ptr<const Classifier> initial) : current_(std::move(initial)) {}

std::shared_ptr<const Classifier> ModelStore::current() const {
  std::lock_guard lock(mutex_);
  return current_;
}

std::uint64_t ModelStore::version() const {
  std::lock_guard lock(mutex_);
  return version_;
}

void ModelStore::swap(std::shared_ptr<const Classifier> next) {
  std::lock_guard lock(mutex_);
  current_ = std::move(next);
  ++version_;
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  config_.validate();
  resources_ = std::make_shared<const Resources>(load_resources(config_.resources_dir, config_.lexicon_path));

  ModelBundle model;
  if (std::filesystem::exists(config_.model_path)) {
    model = load_model(config_.model_path, *resources_);
  } else {
    model = mass::train(load_corpus(config_.corpus_dir), resources_, config_.model);
    save_model(model, config_.model_path);
  }
  auto classifier = std::make_shared<const Classifier>(resources_, std::move(model));

  for (const auto& term : resources_->lexicon.terms()) add_words(speller_, term);
  for (const auto& [word, tag] : resources_->tags.entries()) speller_.add(word);
  for (const auto& w : resources_->stopwords.words()) speller_.add(w);
  for (const auto& c : classifier->model().centroids)
    for (const auto& m : c.members) add_words(speller_, m.findings());

  store_ = std::make_unique<ModelStore>(std::move(classifier));
}

Service::~Service() { stop(); }

SpellChecker Service::speller_snapshot() const {
  std::lock_guard lock(speller_mutex_);
  return speller_;
}

Response Service::normalize(std::string_view body) const {
  return guarded([&] {
    auto text = required_string(parse_body(body), "text");
    const auto& detector = store_->current()->summarizer().detector();
    auto detections = detector.detect_unsanctioned(text);
    std::vector<Span> skip;
    for (const auto& d : detections) skip.push_back(d.span);
    auto misspelled = speller_snapshot().detect(text, skip);
    detections.insert(detections.end(), misspelled.begin(), misspelled.end());
    std::sort(detections.begin(), detections.end(),
              [](const Detection& a, const Detection& b) { return a.span < b.span; });
    json list = json::array();
    for (const auto& d : detections) list.push_back(detection_json(d));
    return json_response(200, json{{"detections", list}});
  });
}

Response Service::classify(std::string_view body) const {
  return guarded([&] {
    auto req = parse_body(body);
    auto text = required_string(req, "text");
    auto report = parse_report(text, req.value("report_id", std::string("draft")));
    auto classifier = store_->current();
    auto verdict = classifier->check_consistency(report);
    json out = scorecard_json(verdict.scorecard);
    out["verdict"] = {{"status", to_string(verdict.status)},
                      {"reported", verdict.reported ? json(verdict.reported->value()) : json(nullptr)}};
    return json_response(200, out);
  });
}

Response Service::submit(std::string_view body) {
  return guarded([&] {
    auto req = parse_body(body);
    auto text = required_string(req, "text");
    auto id = required_string(req, "report_id");
    if (!valid_report_id(id)) return error_response(400, "InvalidEntry", "report_id must be 1-128 of [A-Za-z0-9_-]");
    if (!req.contains("accepted_category") || !req["accepted_category"].is_number_integer())
      return error_response(400, "MalformedBody", "field 'accepted_category' must be an integer");
    BiradsCategory category(req["accepted_category"].get<int>());

    std::vector<Replacement> accepted;
    if (req.contains("accepted_replacements")) {
      for (const auto& r : req.at("accepted_replacements"))
        accepted.push_back({{r.at("start").get<std::size_t>(), r.at("end").get<std::size_t>()},
                            r.at("term").get<std::string>()});
    }
    auto final_text = apply_replacements(text, std::move(accepted));
    auto report = parse_report(final_text, id);
    report.reported_category = category;

    std::lock_guard writer(store_->writer());
    auto current = store_->current();
    auto next = current->with_report(report);
    append_to_corpus(config_.corpus_dir, report);
    save_model(next, config_.model_path);
    store_->swap(std::make_shared<const Classifier>(resources_, std::move(next)));
    {
      std::lock_guard lock(speller_mutex_);
      add_words(speller_, report.findings());
    }
    return json_response(200, json{{"stored", id}, {"category", category.value()}, {"model_version", store_->version()}});
  });
}

Response Service::train() {
  return guarded([&] {
    std::unique_lock writer(store_->writer(), std::try_to_lock);
    if (!writer.owns_lock()) return error_response(409, "Busy", "another training run is in progress");
    auto corpus = load_corpus(config_.corpus_dir);
    auto model = mass::train(corpus, resources_, store_->current()->model().config);
    save_model(model, config_.model_path);
    store_->swap(std::make_shared<const Classifier>(resources_, std::move(model)));
    return json_response(200, json{{"reports", corpus.size()}, {"model_version", store_->version()}});
  });
}

Response Service::model_info() const {
  return guarded([&] {
    auto classifier = store_->current();
    const auto& m = classifier->model();
    json centroids = json::array();
    for (const auto& c : m.centroids)
      centroids.push_back(json{{"category", c.category.value()},
                               {"report_count", c.summary.report_count},
                               {"representatives", c.summary.representatives.size()}});
    const auto& cfg = m.config;
    json config{{"k", cfg.summarizer.k},
                {"boost_factor", cfg.summarizer.boost_factor},
                {"idf_formula_id", cfg.summarizer.idf_formula_id},
                {"weights", {{"semantic", cfg.weights.semantic}, {"pattern", cfg.weights.pattern}, {"term", cfg.weights.term}}}};
    return json_response(200, json{{"format_version", m.format_version},
                                   {"resource_digest", m.resource_digest},
                                   {"model_version", store_->version()},
                                   {"config", config},
                                   {"centroids", centroids}});
  });
}

Response Service::health() const { return {200, "ok", "text/plain"}; }

void Service::mount() {
  server_ = std::make_unique<httplib::Server>();
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server_->Post("/normalize", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, normalize(req.body));
  });
  server_->Post("/classify", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, classify(req.body));
  });
  server_->Post("/submit", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, submit(req.body));
  });
  server_->Post("/train", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, train()); });
  server_->Get("/model", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, model_info()); });
  server_->Get("/health", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, health()); });
}

void Service::run() {
  mount();
  if (!server_->listen(config_.bind, config_.port))
    throw Error(ErrorKind::Io, fmt::format("cannot listen on {}:{}", config_.bind, config_.port));
}

int Service::start_background() {
  mount();
  int port = server_->bind_to_any_port(config_.bind);
  if (port <= 0) throw Error(ErrorKind::Io, fmt::format("cannot bind {}", config_.bind));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void Service::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace mass
