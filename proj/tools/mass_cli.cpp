#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mass/classifier.hpp"
#include "mass/error.hpp"
#include "mass/evaluation.hpp"
#include "mass/model_io.hpp"
#include "mass/service.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInconsistent = 3;

struct Common {
  std::string resources = MASS_DEFAULT_RESOURCES;
  std::string lexicon;

  std::shared_ptr<const mass::Resources> load() const {
    std::optional<fs::path> override;
    if (!lexicon.empty()) override = lexicon;
    return std::make_shared<const mass::Resources>(mass::load_resources(resources, override));
  }
};

void print_scorecard(const mass::Scorecard& card) {
  for (const auto& [c, s] : card.scores)
    fmt::print("  BI-RADS {}  {:>6}%{}\n", c.value(), card.percent(c), c == card.inferred ? "  <- inferred" : "");
}

mass::Report read_report(const std::string& path) {
  return mass::parse_report(mass::read_file(path), fs::path(path).stem().string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BI-RADS report term normalization and category consistency checking"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--resources", common.resources, "Directory with lexicon.tsv, synsets.tsv, stopwords.txt, postags.tsv");
  app.add_option("--lexicon", common.lexicon, "Lexicon file replacing the one in --resources");

  std::string corpus, out, model_path, config_path, format = "csv";
  std::vector<std::string> files;
  mass::ModelConfig model_config;
  bool apply = false, loo = false;
  std::string normalizer_dir;

  auto* train = app.add_subcommand("train", "Build the seven category centroids from a corpus");
  train->add_option("--corpus", corpus, "Corpus directory with corpus.tsv")->required();
  train->add_option("--out", out, "Model file to write")->required();
  train->add_option("--k", model_config.summarizer.k, "Representative sentences per category");
  train->add_option("--boost", model_config.summarizer.boost_factor, "Score multiplier for sentences with BI-RADS terms");

  auto* classify = app.add_subcommand("classify", "Print the category scorecard of each report");
  classify->add_option("--model", model_path, "Model file")->required();
  classify->add_option("files", files, "Report files")->required();

  auto* check = app.add_subcommand("check", "Compare the reported category with the inferred one");
  check->add_option("--model", model_path, "Model file")->required();
  check->add_option("file", files, "Report file")->required()->expected(1);

  auto* normalize = app.add_subcommand("normalize", "List unsanctioned terms and their replacements");
  normalize->add_option("file", files, "Text file")->required()->expected(1);
  normalize->add_flag("--apply", apply, "Print the text with the first suggestion applied");

  auto* eval = app.add_subcommand("eval", "Precision and recall on a labeled corpus");
  eval->add_option("--model", model_path, "Model file");
  eval->add_option("--corpus", corpus, "Labeled corpus directory");
  eval->add_flag("--loo", loo, "Leave-one-out over --corpus instead of using --model");
  eval->add_option("--normalizer", normalizer_dir, "Score term detection on an annotated directory");
  eval->add_option("--format", format, "csv or table")->check(CLI::IsMember({"csv", "table"}));

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", config_path, "key=value configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*train) {
      auto resources = common.load();
      auto model = mass::train(mass::load_corpus(corpus), resources, model_config);
      mass::save_model(model, out);
      for (const auto& c : model.centroids)
        fmt::print("category {}: {} reports, {} representatives\n", c.category.value(), c.summary.report_count,
                   c.summary.representatives.size());
      return 0;
    }
    if (*classify || *check) {
      auto resources = common.load();
      mass::Classifier classifier(resources, mass::load_model(model_path, *resources));
      if (*check) {
        auto verdict = classifier.check_consistency(read_report(files.front()));
        fmt::print("{}: {}", files.front(), mass::to_string(verdict.status));
        if (verdict.reported) fmt::print(" (reported {}, inferred {})", verdict.reported->value(),
                                         verdict.scorecard.inferred.value());
        else fmt::print(" (inferred {})", verdict.scorecard.inferred.value());
        fmt::print("\n");
        print_scorecard(verdict.scorecard);
        return verdict.status == mass::VerdictStatus::Inconsistent ? kExitInconsistent : 0;
      }
      for (const auto& f : files) {
        auto card = classifier.classify(read_report(f));
        fmt::print("{}: inferred {}\n", f, card.inferred.value());
        print_scorecard(card);
      }
      return 0;
    }
    if (*normalize) {
      auto resources = common.load();
      mass::TermDetector detector(resources->lexicon);
      auto text = mass::read_file(files.front());
      if (apply) {
        fmt::print("{}", mass::normalize_terms(text, detector));
        return 0;
      }
      for (const auto& d : detector.detect_unsanctioned(text))
        fmt::print("{}-{}\t{}\t{}\n", d.span.start, d.span.end, d.found_term, fmt::join(d.suggestions, "|"));
      return 0;
    }
    if (*eval) {
      auto resources = common.load();
      if (!normalizer_dir.empty()) {
        auto result = mass::evaluate_normalizer_dir(normalizer_dir, resources->lexicon);
        fmt::print("{}", format == "csv" ? mass::render_normalizer_csv(result) : mass::render_normalizer_table(result));
        return 0;
      }
      if (corpus.empty()) {
        std::cerr << "eval: --corpus is required\n";
        return kExitUsage;
      }
      mass::ClassifierEvaluation result;
      if (loo) {
        result = mass::leave_one_out(mass::load_corpus(corpus), resources, model_config);
      } else {
        if (model_path.empty()) {
          std::cerr << "eval: --model or --loo is required\n";
          return kExitUsage;
        }
        mass::Classifier classifier(resources, mass::load_model(model_path, *resources));
        result = mass::evaluate_classifier(classifier, mass::load_corpus(corpus));
      }
      fmt::print("{}", format == "csv" ? mass::render_classifier_csv(result.metrics)
                                       : mass::render_classifier_table(result.metrics));
      return 0;
    }
    if (*serve) {
      mass::Service service(mass::load_service_config(config_path));
      fmt::print("listening on {}:{}\n", service.config().bind, service.config().port);
      std::fflush(stdout);
      service.run();
      return 0;
    }
  } catch (const mass::Error& e) {
    std::cerr << "mass: " << e.what() << "\n";
    return e.kind() == mass::ErrorKind::InvalidConfig ? kExitUsage : kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "mass: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
