#include <gtest/gtest.h>

#include <httplib.h>

#include <cstdio>

#include <json.hpp>

#include "mass/error.hpp"
#include "mass/model_io.hpp"
#include "mass/service.hpp"
#include "support/test_support.hpp"

using namespace mass;
using nlohmann::json;

namespace {

ErrorKind config_error(const std::string& text, const std::filesystem::path& base = {}) {
  try {
    parse_service_config(text, base).validate();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "config accepted: " << text;
  return ErrorKind::Io;
}

// Service over a private copy of the bundled corpus.
class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    mass::test::copy_corpus(dir_.path() / "corpus");
    ServiceConfig cfg;
    cfg.corpus_dir = dir_.path() / "corpus";
    cfg.model_path = dir_.path() / "model.json";
    cfg.resources_dir = mass::test::kDataDir / "resources";
    service_ = std::make_unique<Service>(cfg);
  }

  json body(const Response& r) { return json::parse(r.body); }

  mass::test::TempDir dir_;
  std::unique_ptr<Service> service_;
};

const std::string kInconsistent =
    "FINDINGS: The breasts are almost entirely fatty. No mass, suspicious calcification or architectural "
    "distortion is seen.\nIMPRESSION: BI-RADS 4.";

std::string fmt_percent(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", score * 100.0);
  return buf;
}

}  // namespace

TEST(ServiceConfigTest, ParsesKeysAndResolvesPaths) {
  auto cfg = parse_service_config(
      "# comment\nport = 9090\nbind = 0.0.0.0\ncorpus_dir = corpus\nmodel_path = /tmp/m.json\n"
      "resources_dir = res\nk = 8\nboost_factor = 3\nw_sem = 0.5\nw_pat = 0.25\nw_term = 0.25\n",
      "/base");
  EXPECT_EQ(cfg.port, 9090);
  EXPECT_EQ(cfg.bind, "0.0.0.0");
  EXPECT_EQ(cfg.corpus_dir, std::filesystem::path("/base/corpus"));
  EXPECT_EQ(cfg.model_path, std::filesystem::path("/tmp/m.json"));
  EXPECT_EQ(cfg.resources_dir, std::filesystem::path("/base/res"));
  EXPECT_EQ(cfg.model.summarizer.k, 8u);
  EXPECT_EQ(cfg.model.summarizer.boost_factor, 3.0);
  EXPECT_EQ(cfg.model.weights, (AggregationWeights{0.5, 0.25, 0.25}));
}

TEST(ServiceConfigTest, RejectsInvalidConfigs) {
  auto data = mass::test::kDataDir.string();
  std::string ok = "corpus_dir = " + data + "/corpus\nresources_dir = " + data + "/resources\nmodel_path = " + data +
                   "/m.json\n";
  EXPECT_NO_THROW(parse_service_config(ok).validate());
  EXPECT_EQ(config_error(ok + "port = 80\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error(ok + "port = 70000\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error(ok + "port = abc\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error(ok + "colour = blue\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error(ok + "no equals sign\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error(ok + "corpus_dir = /nonexistent/dir\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error(ok + "model_path = /nonexistent/dir/m.json\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error(ok + "w_sem = 0.9\n"), ErrorKind::WeightsInvalid);
  EXPECT_EQ(config_error(ok + "k = 0\n"), ErrorKind::InvalidConfig);
}

TEST(ModelStoreTest, SwapBumpsVersion) {
  auto resources = mass::test::shipped_resources();
  auto clf = std::make_shared<const Classifier>(resources, train(mass::test::bundled_corpus(), resources));
  ModelStore store(clf);
  EXPECT_EQ(store.version(), 1u);
  auto snapshot = store.current();
  store.swap(std::make_shared<const Classifier>(*clf));
  EXPECT_EQ(store.version(), 2u);
  EXPECT_NE(store.current(), snapshot);
  EXPECT_EQ(snapshot, clf);
}

TEST_F(ServiceTest, StartupTrainsAndSavesModel) {
  EXPECT_TRUE(std::filesystem::exists(dir_.path() / "model.json"));
  auto info = body(service_->model_info());
  EXPECT_EQ(info["format_version"], kModelFormatVersion);
  EXPECT_EQ(info["api_version"], kApiVersion);
  EXPECT_EQ(info["centroids"].size(), 7u);
  EXPECT_EQ(info["centroids"][3]["report_count"], 12);
  EXPECT_EQ(info["config"]["k"], 12);
}

TEST_F(ServiceTest, NormalizeReportsUnsanctionedTermsAndMisspellings) {
  auto r = service_->normalize(R"({"text": "a nodule seen with calcifcations"})");
  ASSERT_EQ(r.status, 200);
  auto j = body(r);
  ASSERT_EQ(j["detections"].size(), 2u);
  const auto& d0 = j["detections"][0];
  EXPECT_EQ(d0["start"], 2);
  EXPECT_EQ(d0["end"], 8);
  EXPECT_EQ(d0["kind"], "unsanctioned");
  EXPECT_EQ(d0["suggestions"], json::array({"mass"}));
  const auto& d1 = j["detections"][1];
  EXPECT_EQ(d1["kind"], "misspelling");
  EXPECT_EQ(d1["found"], "calcifcations");
  EXPECT_NE(std::find(d1["suggestions"].begin(), d1["suggestions"].end(), "calcifications"),
            d1["suggestions"].end());
}

TEST_F(ServiceTest, ClassifyReturnsScorecardAndVerdict) {
  auto r = service_->classify(json{{"text", kInconsistent}}.dump());
  ASSERT_EQ(r.status, 200);
  auto j = body(r);
  ASSERT_EQ(j["scores"].size(), 7u);
  for (const auto& row : j["scores"]) {
    EXPECT_GE(row["score"].get<double>(), 0.0);
    EXPECT_LE(row["score"].get<double>(), 1.0);
    EXPECT_TRUE(row.contains("semantic"));
    EXPECT_EQ(row["percent"].get<std::string>(), fmt_percent(row["score"].get<double>()));
  }
  EXPECT_EQ(j["verdict"]["status"], "inconsistent");
  EXPECT_EQ(j["verdict"]["reported"], 4);
  EXPECT_EQ(j["inferred"], 1);
}

TEST_F(ServiceTest, MalformedRequestsAre400) {
  EXPECT_EQ(service_->classify("not json").status, 400);
  EXPECT_EQ(service_->classify("[1,2]").status, 400);
  EXPECT_EQ(service_->classify(R"({"text": 5})").status, 400);
  EXPECT_EQ(service_->classify(R"({"text": "no sections here"})").status, 400);
  EXPECT_EQ(service_->normalize("{}").status, 400);
  EXPECT_EQ(service_->submit(R"({"text": "FINDINGS: Mass.", "report_id": "a b", "accepted_category": 4})").status,
            400);
  EXPECT_EQ(service_->submit(R"({"text": "FINDINGS: Mass.", "report_id": "ab", "accepted_category": 9})").status,
            400);
  EXPECT_EQ(service_->submit(R"({"text": "FINDINGS: Mass.", "report_id": "ab"})").status, 400);
  auto j = body(service_->classify("not json"));
  EXPECT_EQ(j["error"]["kind"], "MalformedBody");
  EXPECT_EQ(j["api_version"], kApiVersion);
}

TEST_F(ServiceTest, SubmitUpdatesCorpusModelAndClassification) {
  const std::string text = "FINDINGS: A spiculated nodule with nipple retraction.\nIMPRESSION: Suspicious.";
  auto before = body(service_->classify(json{{"text", text}}.dump()));
  auto r = service_->submit(json{{"text", text},
                                 {"report_id", "submitted-1"},
                                 {"accepted_category", 5},
                                 {"accepted_replacements", json::array({{{"start", 23}, {"end", 29}, {"term", "mass"}}})}}
                                .dump());
  ASSERT_EQ(r.status, 200) << r.body;
  auto j = body(r);
  EXPECT_EQ(j["stored"], "submitted-1");
  EXPECT_EQ(j["model_version"], 2);

  auto corpus = load_corpus(dir_.path() / "corpus");
  EXPECT_EQ(corpus.size(), mass::test::bundled_corpus().size() + 1);
  EXPECT_EQ(corpus.reports().back().findings(), "A spiculated mass with nipple retraction.");
  auto saved = load_model(dir_.path() / "model.json", *mass::test::shipped_resources());
  EXPECT_EQ(saved.centroid(BiradsCategory(5)).members.size(), 13u);
  EXPECT_EQ(saved, service_->store().current()->model());

  auto after = body(service_->classify(json{{"text", text}}.dump()));
  EXPECT_NE(after["scores"][5]["score"], before["scores"][5]["score"]);
  EXPECT_EQ(service_->submit(json{{"text", text}, {"report_id", "submitted-1"}, {"accepted_category", 5}}.dump()).status,
            409);
}

TEST_F(ServiceTest, TrainIsRejectedWhileAWriterHoldsTheLock) {
  {
    std::lock_guard held(service_->store().writer());
    auto r = service_->train();
    EXPECT_EQ(r.status, 409);
    EXPECT_EQ(body(r)["error"]["kind"], "Busy");
  }
  auto r = service_->train();
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(body(r)["reports"], 84);
  EXPECT_EQ(body(r)["model_version"], 2);
}

TEST_F(ServiceTest, HttpEndpoints) {
  int port = service_->start_background();
  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->body, "ok");

  auto norm = client.Post("/normalize", R"({"text": "a nodule seen"})", "application/json");
  ASSERT_TRUE(norm);
  EXPECT_EQ(norm->status, 200);
  auto dets = json::parse(norm->body)["detections"];
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0]["suggestions"], json::array({"mass"}));

  auto cls = client.Post("/classify", json{{"text", kInconsistent}}.dump(), "application/json");
  ASSERT_TRUE(cls);
  EXPECT_EQ(cls->status, 200);
  EXPECT_EQ(json::parse(cls->body)["scores"].size(), 7u);
  EXPECT_EQ(cls->get_header_value("Content-Type"), "application/json");

  auto bad = client.Post("/classify", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto model = client.Get("/model");
  ASSERT_TRUE(model);
  EXPECT_EQ(json::parse(model->body)["centroids"].size(), 7u);

  auto trained = client.Post("/train", "", "application/json");
  ASSERT_TRUE(trained);
  EXPECT_EQ(trained->status, 200);
  service_->stop();
}

TEST(ServiceStartup, CorruptModelFailsStartup) {
  mass::test::TempDir dir;
  mass::test::copy_corpus(dir.path() / "corpus");
  write_file(dir.path() / "model.json", "{ broken");
  ServiceConfig cfg;
  cfg.corpus_dir = dir.path() / "corpus";
  cfg.model_path = dir.path() / "model.json";
  cfg.resources_dir = mass::test::kDataDir / "resources";
  try {
    Service s(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CorruptModel);
  }
}
