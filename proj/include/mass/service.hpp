#ifndef MASS_SERVICE_HPP
#define MASS_SERVICE_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "mass/classifier.hpp"
#include "mass/normalizer.hpp"

namespace httplib {
class Server;
}

namespace mass {

inline constexpr const char* kApiVersion = "1";

struct ServiceConfig {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::filesystem::path corpus_dir;
  std::filesystem::path model_path;
  std::filesystem::path resources_dir;
  std::optional<std::filesystem::path> lexicon_path;
  ModelConfig model;

  // Port in 1024..65535, corpus and resource directories present, model
  // directory present. Throws InvalidConfig.
  void validate() const;
};

// `key = value` lines; '#' starts a comment. Relative paths are resolved
// against base_dir. Unknown keys are rejected.
ServiceConfig parse_service_config(std::string_view text, const std::filesystem::path& base_dir = {});
ServiceConfig load_service_config(const std::filesystem::path& path);

/// Holds the classifier readers use. Readers take a snapshot; writers swap in
/// a new one. Only one writer at a time.
class ModelStore {
 public:
  explicit ModelStore(std::shared_ptr<const Classifier> initial);

  std::shared_ptr<const Classifier> current() const;
  std::uint64_t version() const;
  void swap(std::shared_ptr<const Classifier> next);

  std::mutex& writer() { return writer_; }

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const Classifier> current_;
  std::uint64_t version_ = 1;
  std::mutex writer_;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class Service {
 public:
  // Loads resources, then the model at model_path, training and saving one
  // from corpus_dir when the file does not exist yet.
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response normalize(std::string_view body) const;
  Response classify(std::string_view body) const;
  Response submit(std::string_view body);
  Response train();
  Response model_info() const;
  Response health() const;

  // Blocks serving on config.bind:config.port.
  void run();
  // Serves on an ephemeral port from a background thread and returns the port.
  int start_background();
  void stop();

  const ServiceConfig& config() const noexcept { return config_; }
  ModelStore& store() noexcept { return *store_; }

 private:
  void mount();
  SpellChecker speller_snapshot() const;

  ServiceConfig config_;
  std::shared_ptr<const Resources> resources_;
  std::unique_ptr<ModelStore> store_;
  mutable std::mutex speller_mutex_;
  SpellChecker speller_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace mass

#endif  // MASS_SERVICE_HPP
